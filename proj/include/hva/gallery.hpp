#ifndef HVA_GALLERY_HPP
#define HVA_GALLERY_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hva/error.hpp"
#include "hva/linalg.hpp"
#include "hva/machine.hpp"
#include "hva/sb_codec.hpp"

namespace hva {

using Predicate = std::function<bool(const Word&)>;

/// A named machine together with an independent membership test for the
/// language it is meant to recognize.
struct GalleryEntry {
    std::string name;
    Hva machine;
    Predicate reference;
    std::vector<Symbol> alphabet;
    std::string notes;
};

namespace predicates {

/// Lengths of the maximal runs a^n b^p a^q covering the whole word, if the
/// word has that shape.
struct AbaShape {
    std::size_t n = 0, b = 0, tail = 0;
};

inline std::optional<AbaShape> aba_shape(const Word& w) {
    AbaShape s;
    std::size_t i = 0;
    while (i < w.size() && w[i] == "a") ++i, ++s.n;
    while (i < w.size() && w[i] == "b") ++i, ++s.b;
    while (i < w.size() && w[i] == "a") ++i, ++s.tail;
    if (i != w.size()) return std::nullopt;
    return s;
}

/// a^n b^p with nothing else.
inline std::optional<std::pair<std::size_t, std::size_t>> ab_shape(const Word& w) {
    auto s = aba_shape(w);
    if (!s || (s->tail != 0 && s->b != 0)) return std::nullopt;
    // "aaa" parses as n = 3, b = 0, tail = 0
    return std::pair{s->n, s->b};
}

/// {a^n b^{a1} a^{a2} | n = a1 or n = a1 + a2}, with n the leading a-run.
inline bool thm1(const Word& w) {
    auto s = aba_shape(w);
    if (!s) return false;
    return s->n == s->b || s->n == s->b + s->tail;
}

inline bool is_power_of_two(std::size_t x, std::size_t exponent) {
    return exponent < 63 && x == (std::size_t{1} << exponent);
}

/// {a^{n + 2^n} | n >= 1}
inline bool upow(const Word& w) {
    for (const auto& s : w) {
        if (s != "a") return false;
    }
    for (std::size_t n = 1; n < 63; ++n) {
        std::size_t len = n + (std::size_t{1} << n);
        if (len == w.size()) return true;
        if (len > w.size()) return false;
    }
    return false;
}

/// {a^n b^{2^n} | n >= 0}
inline bool pow(const Word& w) {
    auto s = ab_shape(w);
    return s && is_power_of_two(s->second, s->first);
}

/// {a^{2^n} b^n | n >= 0}
inline bool pow_r(const Word& w) {
    auto s = ab_shape(w);
    return s && is_power_of_two(s->first, s->second);
}

/// {w # w^r | w in {a_1..a_l}*}
inline bool mpal(const Word& w, std::size_t l) {
    std::size_t hash = w.size();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == "#") {
            if (hash != w.size()) return false;
            hash = i;
            continue;
        }
        bool known = false;
        for (std::size_t j = 1; j <= l; ++j) known = known || w[i] == gsb_symbol(j);
        if (!known) return false;
    }
    if (hash == w.size() || 2 * hash + 1 != w.size()) return false;
    for (std::size_t i = 0; i < hash; ++i) {
        if (w[i] != w[w.size() - 1 - i]) return false;
    }
    return true;
}

/// Splits "t#a_1#...#a_n#" into its least-significant-bit-first numbers.
/// Requires at least one a_i and non-empty bit blocks.
inline std::optional<std::vector<BigInt>> subsetsum_fields(const Word& w) {
    if (w.empty() || w.back() != "#") return std::nullopt;
    std::vector<BigInt> values;
    BigInt current = 0, weight = 1;
    std::size_t bits = 0;
    for (const auto& s : w) {
        if (s == "#") {
            if (bits == 0) return std::nullopt;
            values.push_back(current);
            current = 0;
            weight = 1;
            bits = 0;
        } else if (s == "0" || s == "1") {
            if (s == "1") current += weight;
            weight *= 2;
            ++bits;
        } else {
            return std::nullopt;
        }
    }
    if (values.size() < 2) return std::nullopt;
    return values;
}

/// {t^r # a_1^r # ... # a_n^r # | some subset of the a_i sums to t}
inline bool subsetsum_r(const Word& w) {
    auto fields = subsetsum_fields(w);
    if (!fields) return false;
    const BigInt& target = fields->front();
    const std::size_t n = fields->size() - 1;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        BigInt sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) sum += (*fields)[i + 1];
        }
        if (sum == target) return true;
    }
    return false;
}

}  // namespace predicates

namespace detail {

inline Matrix scalar(const Rational& x) { return Matrix{{x}}; }

/// Counter-style machine for the thm1 language over a given dimension:
/// `up` per leading a, `down` per b and per trailing a; an EQ guard on the
/// first trailing a diverts to an identity loop.
inline Hva thm1_machine(std::string name, Vector v, const Matrix& up, const Matrix& down) {
    const Matrix id = Matrix::identity(v.dim());
    return HvaBuilder(std::move(name), {"a", "b"}, std::move(v))
        .deterministic(true)
        .blind(false)
        .state("lead", true)
        .state("bees", true)
        .state("count", true)
        .state("hold", true)
        .on("lead", "a", "lead", up)
        .on("lead", "b", "bees", down)
        .on("bees", "b", "bees", down)
        .on("bees", "a", Guard::Eq, "hold", id)
        .on("bees", "a", Guard::Neq, "count", down)
        .on("count", "a", "count", down)
        .on("hold", "a", "hold", id)
        .build();
}

inline const Matrix& u1() {
    static const Matrix m{{1, 1, 0}, {1, 1, 0}, {0, 0, 1}};
    return m;
}

inline const Matrix& u2() {
    static const Matrix m{{1, 0, 0}, {0, 0, 0}, {-1, 1, 1}};
    return m;
}

}  // namespace detail

inline GalleryEntry gallery_thm1_dim2() {
    const Matrix up{{1, 0}, {1, 1}};
    const Matrix down{{1, 0}, {-1, 1}};
    return {"thm1_dim2",
            detail::thm1_machine("thm1_dim2", Vector::ones(2), up, down),
            predicates::thm1,
            {"a", "b"},
            "First entry counts leading a's minus later symbols; an equality seen right after the "
            "b-block switches to the identity for the rest of the input."};
}

inline GalleryEntry gallery_thm1_dim1() {
    return {"thm1_dim1",
            detail::thm1_machine("thm1_dim1", Vector{Rational(1)}, detail::scalar(2), detail::scalar(rat(1, 2))),
            predicates::thm1,
            {"a", "b"},
            "The same control with a multiplicative counter (x2 up, x1/2 down)."};
}

/// UPOW with the identity switch step, so accepted lengths are n + 2^n.
inline GalleryEntry gallery_upow() {
    const Matrix id = Matrix::identity(3);
    Hva m = HvaBuilder("upow", {"a"}, Vector::ones(3))
                .deterministic(false)
                .blind(true)
                .state("start")
                .state("double")
                .state("count", true)
                .on("start", "a", "double", detail::u1())
                .on("double", "a", "double", detail::u1())
                .on("double", "a", "count", id)
                .on("count", "a", "count", detail::u2())
                .build();
    return {"upow", std::move(m), predicates::upow, {"a"},
            "U1 doubles entries 1-2 per a, a guessed a switches via the identity, then U2 counts "
            "entry 1 down to 1."};
}

/// UPOW exactly as the matrices are usually printed (no identity switch);
/// accepts a^{n + 2^n - 1}. Kept for regression tests of the repair.
inline Hva upow_as_printed() {
    return HvaBuilder("upow_as_printed", {"a"}, Vector::ones(3))
        .deterministic(false)
        .blind(true)
        .state("double")
        .state("count", true)
        .on("double", "a", "double", detail::u1())
        .on("double", "a", "count", detail::u2())
        .on("count", "a", "count", detail::u2())
        .build();
}

inline const Matrix& subsetsum_t0() {
    static const Matrix m{{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 1, 0}, {0, 0, 1, 1, 0}, {0, 0, 0, 0, 1}};
    return m;
}
inline const Matrix& subsetsum_t1() {
    static const Matrix m{{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {1, 0, 1, 1, 0}, {0, 0, 1, 1, 0}, {0, 0, 0, 0, 1}};
    return m;
}
inline const Matrix& subsetsum_hash() {
    static const Matrix m{{1, 0, 0, 0, 0}, {-1, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 1, 1, 1}};
    return m;
}
inline const Matrix& subsetsum_a0() { return subsetsum_t0(); }
inline const Matrix& subsetsum_a1() {
    static const Matrix m{{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 1, 1, 1, 0}, {0, 0, 1, 1, 0}, {0, 0, 0, 0, 1}};
    return m;
}

inline GalleryEntry gallery_subsetsum_r() {
    const Matrix id = Matrix::identity(5);
    HvaBuilder b("subsetsum_r", {"0", "1", "#"}, Vector{0, 0, 1, 1, 1});
    b.deterministic(false).blind(true);
    b.state("t_start").state("t_bits").state("block").state("pick").state("skip").state("sep", true);
    b.on("t_start", "0", "t_bits", subsetsum_t0()).on("t_start", "1", "t_bits", subsetsum_t1());
    b.on("t_bits", "0", "t_bits", subsetsum_t0()).on("t_bits", "1", "t_bits", subsetsum_t1());
    b.on("t_bits", "#", "block", subsetsum_hash());
    for (const char* from : {"block", "sep"}) {
        b.on(from, "0", "pick", subsetsum_a0()).on(from, "1", "pick", subsetsum_a1());
        b.on(from, "0", "skip", id).on(from, "1", "skip", id);
    }
    b.on("pick", "0", "pick", subsetsum_a0()).on("pick", "1", "pick", subsetsum_a1());
    b.on("skip", "0", "skip", id).on("skip", "1", "skip", id);
    b.on("pick", "#", "sep", subsetsum_hash()).on("skip", "#", "sep", subsetsum_hash());
    return {"subsetsum_r", b.build(), predicates::subsetsum_r, {"0", "1", "#"},
            "t is read into entry 1, each block is either read into entry 2 and subtracted at '#' "
            "or skipped with the identity; entries 3-4 hold the running power of two."};
}

inline GalleryEntry gallery_mpal(std::size_t l) {
    if (l < 2) throw InvalidArgument("mpal needs an alphabet of at least 2 symbols, got " + std::to_string(l));
    const GsbFamily fam = gsb_matrices(l);
    std::vector<Symbol> alphabet;
    for (std::size_t j = 1; j <= l; ++j) alphabet.push_back(gsb_symbol(j));
    alphabet.push_back("#");
    const std::string name = "mpal_" + std::to_string(l);
    HvaBuilder b(name, alphabet, Vector::ones(l));
    b.deterministic(true).blind(true).state("encode").state("decode", true);
    for (std::size_t j = 1; j <= l; ++j) {
        b.on("encode", gsb_symbol(j), "encode", fam.matrix(j));
        b.on("decode", gsb_symbol(j), "decode", mat_inverse(fam.matrix(j)));
    }
    b.on("encode", "#", "decode", Matrix::identity(l));
    return {name, b.build(), [l](const Word& w) { return predicates::mpal(w, l); }, alphabet,
            "Generalized Stern-Brocot encoding before '#', inverse matrices after."};
}

inline GalleryEntry gallery_pow() {
    Hva m = HvaBuilder("pow", {"a", "b"}, Vector::ones(3))
                .deterministic(true)
                .blind(true)
                .state("as")
                .state("bs", true)
                .on("as", "a", "as", detail::u1())
                .on("as", "b", "bs", Matrix::identity(3))
                .on("bs", "b", "bs", detail::u2())
                .build();
    return {"pow", std::move(m), predicates::pow, {"a", "b"},
            "U1 per a, identity on the first b, U2 per further b."};
}

inline GalleryEntry gallery_pow_r() {
    const Matrix ma{{1, 0}, {1, 1}};
    const Matrix mb{{rat(1, 2), 0}, {0, 1}};
    Hva m = HvaBuilder("pow_r", {"a", "b"}, Vector::ones(2))
                .deterministic(true)
                .blind(true)
                .state("start")
                .state("as", true)
                .state("bs", true)
                .on("start", "a", "as", Matrix::identity(2))
                .on("as", "a", "as", ma)
                .on("as", "b", "bs", mb)
                .on("bs", "b", "bs", mb)
                .build();
    return {"pow_r", std::move(m), predicates::pow_r, {"a", "b"},
            "From [1 1]: identity on the first a, M_a on further a's, M_b halves entry 1 per b."};
}

inline std::vector<GalleryEntry> gallery_all() {
    std::vector<GalleryEntry> all;
    all.push_back(gallery_thm1_dim2());
    all.push_back(gallery_thm1_dim1());
    all.push_back(gallery_upow());
    all.push_back(gallery_subsetsum_r());
    all.push_back(gallery_mpal(2));
    all.push_back(gallery_mpal(3));
    all.push_back(gallery_pow());
    all.push_back(gallery_pow_r());
    return all;
}

/// Looks an entry up by name; "mpal_L" works for any L >= 2.
inline std::optional<GalleryEntry> gallery_find(const std::string& name) {
    if (name.rfind("mpal_", 0) == 0) {
        const std::string digits = name.substr(5);
        if (digits.empty() || digits.size() > 3 || digits.find_first_not_of("0123456789") != std::string::npos) {
            return std::nullopt;
        }
        const auto l = std::stoul(digits);
        if (l < 2) return std::nullopt;
        return gallery_mpal(l);
    }
    for (auto& e : gallery_all()) {
        if (e.name == name) return std::move(e);
    }
    return std::nullopt;
}

}  // namespace hva

#endif  // HVA_GALLERY_HPP

#ifndef HVA_SB_CODEC_HPP
#define HVA_SB_CODEC_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hva/error.hpp"
#include "hva/linalg.hpp"
#include "hva/machine.hpp"

namespace hva {

// ---------------------------------------------------------------------------
// Binary Stern-Brocot encoding
// ---------------------------------------------------------------------------

struct SbMatrices {
    Matrix m0;  // '0': second entry += first
    Matrix m1;  // '1': first entry += second
    Matrix n0;  // inverse of m0
    Matrix n1;  // inverse of m1
};

inline const SbMatrices& sb_matrices() {
    static const SbMatrices mats{
        Matrix{{1, 1}, {0, 1}},
        Matrix{{1, 0}, {1, 1}},
        Matrix{{1, -1}, {0, 1}},
        Matrix{{1, 0}, {-1, 1}},
    };
    return mats;
}

/// Encodes a binary string as an integer pair, starting from [1 1].
inline Vector sb_encode(std::string_view bits) {
    const auto& mats = sb_matrices();
    Vector v = Vector::ones(2);
    for (char c : bits) {
        if (c == '0') {
            v = vec_mat_mul(v, mats.m0);
        } else if (c == '1') {
            v = vec_mat_mul(v, mats.m1);
        } else {
            throw InvalidArgument(std::string("'") + c + "' is not a binary digit");
        }
    }
    return v;
}

namespace detail {

inline void require_positive_integers(const Vector& v) {
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (!v[i].is_integer() || v[i].sign() <= 0) {
            throw InvalidEncoding("entry " + std::to_string(i + 1) + " (" + v[i].str() +
                                  ") is not a positive integer");
        }
    }
}

}  // namespace detail

/// Inverse of sb_encode: peels symbols off the right end by subtracting the
/// smaller entry from the larger until [1 1] is reached.
inline std::string sb_decode(const Vector& v) {
    if (v.dim() != 2) throw InvalidArgument("Stern-Brocot vectors have 2 entries");
    detail::require_positive_integers(v);
    BigInt a = v[0].numerator();
    BigInt b = v[1].numerator();
    std::string reversed;
    while (!(a == 1 && b == 1)) {
        if (a == b) {
            throw InvalidEncoding("[" + v.str() + "] is not an encoding: reached the tie [" + a.str() + " " + b.str() +
                                  "]");
        }
        if (b > a) {
            reversed.push_back('0');
            b -= a;
        } else {
            reversed.push_back('1');
            a -= b;
        }
    }
    std::reverse(reversed.begin(), reversed.end());
    return reversed;
}

/// Same decoder expressed with the inverse matrices N0 and N1.
inline std::string sb_decode_by_inverse(const Vector& v) {
    if (v.dim() != 2) throw InvalidArgument("Stern-Brocot vectors have 2 entries");
    detail::require_positive_integers(v);
    const auto& mats = sb_matrices();
    const Vector home = Vector::ones(2);
    Vector cur = v;
    std::string reversed;
    while (cur != home) {
        if (cur[0] == cur[1]) throw InvalidEncoding("[" + v.str() + "] is not an encoding");
        if (cur[1] > cur[0]) {
            reversed.push_back('0');
            cur = vec_mat_mul(cur, mats.n0);
        } else {
            reversed.push_back('1');
            cur = vec_mat_mul(cur, mats.n1);
        }
    }
    std::reverse(reversed.begin(), reversed.end());
    return reversed;
}

// ---------------------------------------------------------------------------
// Generalized (k-ary) Stern-Brocot encoding
// ---------------------------------------------------------------------------

/// Symbols a_1..a_k are represented by their 1-based index j.
using GsbWord = std::vector<std::size_t>;

inline std::string gsb_symbol(std::size_t j) { return "a_" + std::to_string(j); }

inline Word gsb_to_word(const GsbWord& w) {
    Word out;
    out.reserve(w.size());
    for (auto j : w) out.push_back(gsb_symbol(j));
    return out;
}

/// A_1..A_k where A_j is the k x k identity with column j set to all ones;
/// multiplying by A_j replaces entry j with the sum of all entries.
struct GsbFamily {
    std::size_t k = 0;
    std::vector<Matrix> a;  // a[j - 1] is A_j

    const Matrix& matrix(std::size_t j) const { return a.at(j - 1); }
};

inline GsbFamily gsb_matrices(std::size_t k) {
    if (k < 2) throw InvalidArgument("generalized Stern-Brocot encoding needs k >= 2, got " + std::to_string(k));
    GsbFamily fam{k, {}};
    for (std::size_t j = 0; j < k; ++j) {
        Matrix m = Matrix::identity(k);
        for (std::size_t i = 0; i < k; ++i) m.at(i, j) = Rational(1);
        fam.a.push_back(std::move(m));
    }
    return fam;
}

inline Vector gsb_encode(const GsbWord& w, std::size_t k) {
    const GsbFamily fam = gsb_matrices(k);
    Vector v = Vector::ones(k);
    for (auto j : w) {
        if (j < 1 || j > k) {
            throw InvalidArgument("symbol index " + std::to_string(j) + " is outside a_1..a_" + std::to_string(k));
        }
        v = vec_mat_mul(v, fam.matrix(j));
    }
    return v;
}

/// Reconstructs the string right to left: the unique maximum entry j names
/// the last symbol a_j, and entry j loses the sum of the others.
inline GsbWord gsb_decode(const Vector& v, std::size_t k) {
    if (k < 2) throw InvalidArgument("generalized Stern-Brocot encoding needs k >= 2, got " + std::to_string(k));
    if (v.dim() != k) {
        throw InvalidArgument("vector has " + std::to_string(v.dim()) + " entries, expected " + std::to_string(k));
    }
    detail::require_positive_integers(v);
    std::vector<BigInt> e;
    e.reserve(k);
    for (const auto& x : v) e.push_back(x.numerator());

    GsbWord reversed;
    while (true) {
        if (std::all_of(e.begin(), e.end(), [](const BigInt& x) { return x == 1; })) break;
        std::size_t top = 0;
        bool tie = false;
        for (std::size_t i = 1; i < k; ++i) {
            if (e[i] > e[top]) {
                top = i;
                tie = false;
            } else if (e[i] == e[top]) {
                tie = true;
            }
        }
        if (tie) throw InvalidEncoding("[" + v.str() + "] is not an encoding: tied maximum during decoding");
        BigInt others = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (i != top) others += e[i];
        }
        e[top] -= others;
        if (e[top] < 1) {
            throw InvalidEncoding("[" + v.str() + "] is not an encoding: entry " + std::to_string(top + 1) +
                                  " drops below 1");
        }
        reversed.push_back(top + 1);
    }
    std::reverse(reversed.begin(), reversed.end());
    return reversed;
}

// ---------------------------------------------------------------------------
// Encoder machines
// ---------------------------------------------------------------------------

/// DBHVA(2) over {0, 1} whose vector after reading w is sb_encode(w).
inline Hva sb_encoder_machine() {
    const auto& mats = sb_matrices();
    return HvaBuilder("sb_encoder", {"0", "1"}, Vector::ones(2))
        .deterministic(true)
        .blind(true)
        .state("enc", true)
        .on("enc", "0", "enc", mats.m0)
        .on("enc", "1", "enc", mats.m1)
        .build();
}

/// DBHVA(k) over {a_1..a_k} whose vector after reading w is gsb_encode(w).
inline Hva gsb_encoder_machine(std::size_t k) {
    const GsbFamily fam = gsb_matrices(k);
    std::vector<Symbol> alphabet;
    for (std::size_t j = 1; j <= k; ++j) alphabet.push_back(gsb_symbol(j));
    HvaBuilder b("gsb_encoder_" + std::to_string(k), alphabet, Vector::ones(k));
    b.deterministic(true).blind(true).state("enc", true);
    for (std::size_t j = 1; j <= k; ++j) b.on("enc", gsb_symbol(j), "enc", fam.matrix(j));
    return b.build();
}

}  // namespace hva

#endif  // HVA_SB_CODEC_HPP

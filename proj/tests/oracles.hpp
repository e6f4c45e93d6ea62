// Test-only reference implementations. Nothing here calls into the
// simulator, enumeration or codec code paths it is used to check.
#ifndef HVA_TESTS_ORACLES_HPP
#define HVA_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "hva/counter.hpp"
#include "hva/machine.hpp"

namespace oracle {

using hva::Rational;

/// Every word over `alphabet` of length <= maxlen in length-then-lex order.
inline std::vector<hva::Word> all_words(const std::vector<hva::Symbol>& alphabet, std::size_t maxlen) {
    std::vector<hva::Word> out{{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= maxlen; ++len) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (const auto& s : alphabet) {
                hva::Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        }
        begin = end;
    }
    return out;
}

/// Plain row-vector product written out entry by entry.
inline std::vector<Rational> times(const std::vector<Rational>& v, const hva::Matrix& m) {
    std::vector<Rational> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        Rational acc;
        for (std::size_t i = 0; i < v.size(); ++i) acc = acc + v[i] * m.at(i, j);
        out[j] = acc;
    }
    return out;
}

/// Recursive descent over every nondeterministic branch; no deduplication,
/// no budget.
inline bool naive_accepts(const hva::Hva& m, const hva::Word& w) {
    std::vector<Rational> home(m.initial_vector.begin(), m.initial_vector.end());
    std::vector<std::size_t> idx;
    for (const auto& s : w) idx.push_back(*m.symbol_index(s));
    auto go = [&](auto&& self, std::size_t pos, std::size_t q, const std::vector<Rational>& v) -> bool {
        if (pos == idx.size()) {
            bool acc = false;
            for (auto a : m.accept_states) acc = acc || a == q;
            return acc && v == home;
        }
        const bool at_home = v == home;
        for (const auto& t : m.transitions) {
            if (t.from != q || t.symbol != idx[pos]) continue;
            if (t.guard == hva::Guard::Eq && !at_home) continue;
            if (t.guard == hva::Guard::Neq && at_home) continue;
            if (self(self, pos + 1, t.to, times(v, t.matrix))) return true;
        }
        return false;
    };
    return go(go, 0, m.initial_state, home);
}

/// Leibniz-formula determinant (k <= 7 keeps this cheap).
inline Rational determinant(const hva::Matrix& m) {
    const std::size_t k = m.dim();
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    Rational det;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i + 1; j < k; ++j) inversions += perm[i] > perm[j];
        }
        Rational term(inversions % 2 ? -1 : 1);
        for (std::size_t i = 0; i < k; ++i) term = term * m.at(i, perm[i]);
        det = det + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

/// Generalized encoding by direct entry-sum updates, no matrices.
inline std::vector<hva::BigInt> gsb_encode_direct(const std::vector<std::size_t>& w, std::size_t k) {
    std::vector<hva::BigInt> v(k, 1);
    for (auto j : w) {
        hva::BigInt sum = 0;
        for (const auto& x : v) sum += x;
        v[j - 1] = sum;
    }
    return v;
}

/// Every word over a_1..a_k (1-based indices) up to maxlen, shortlex order.
inline std::vector<std::vector<std::size_t>> all_gsb_words(std::size_t k, std::size_t maxlen) {
    std::vector<hva::Symbol> alpha;
    for (std::size_t j = 1; j <= k; ++j) alpha.push_back(std::to_string(j));
    std::vector<std::vector<std::size_t>> out;
    for (const auto& w : all_words(alpha, maxlen)) {
        std::vector<std::size_t> g;
        for (const auto& s : w) g.push_back(std::stoul(s));
        out.push_back(std::move(g));
    }
    return out;
}

/// Random deterministic blind k-counter machine over {a, b}: each (state,
/// symbol) pair gets a transition with probability 3/4.
inline hva::CounterMachine random_blind_counter_machine(std::mt19937& rng, std::size_t k, std::size_t states) {
    hva::CounterMachine m;
    m.name = "random";
    m.k = k;
    m.blind = true;
    m.acceptance = hva::Acceptance::StateAndZero;
    m.alphabet = {"a", "b"};
    for (std::size_t q = 0; q < states; ++q) m.states.push_back("q" + std::to_string(q));
    std::uniform_int_distribution<std::size_t> pick_state(0, states - 1);
    std::uniform_int_distribution<int> pick_inc(-1, 1);
    std::bernoulli_distribution coin(0.5), present(0.75);
    m.initial_state = 0;
    for (std::size_t q = 0; q < states; ++q) {
        if (coin(rng)) m.accept_states.push_back(q);
    }
    if (m.accept_states.empty()) m.accept_states.push_back(pick_state(rng));
    for (std::size_t q = 0; q < states; ++q) {
        for (std::size_t s = 0; s < 2; ++s) {
            if (!present(rng)) continue;
            hva::CounterTransition t;
            t.from = q;
            t.symbol = s;
            t.to = pick_state(rng);
            for (std::size_t i = 0; i < k; ++i) t.increments.push_back(pick_inc(rng));
            m.transitions.push_back(std::move(t));
        }
    }
    return m;
}

}  // namespace oracle

#endif  // HVA_TESTS_ORACLES_HPP

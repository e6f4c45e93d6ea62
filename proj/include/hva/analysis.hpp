#ifndef HVA_ANALYSIS_HPP
#define HVA_ANALYSIS_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hva/error.hpp"
#include "hva/gallery.hpp"
#include "hva/linalg.hpp"
#include "hva/machine.hpp"

namespace hva {

struct EnumOptions {
    /// Worker threads; results never depend on this.
    std::size_t jobs = 1;
    RunLimits limits;
};

/// Length-then-lexicographic order on words of symbol indices. The symbol
/// order is the order of the machine's `alphabet` array.
inline bool shortlex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

namespace detail {

inline Word decode_word(const std::vector<Symbol>& alphabet, const std::vector<std::size_t>& w) {
    Word out;
    out.reserve(w.size());
    for (auto s : w) out.push_back(alphabet[s]);
    return out;
}

/// Depth-first walk of every word of length <= maxlen over `nsym` symbols,
/// carrying a per-prefix state so shared prefixes are simulated once.
///
/// Work is split into `nsym + 1` tasks (the empty word, then one subtree per
/// first symbol); `visit(task, word, state)` is only ever called from one
/// thread per task, so callers keep one result slot per task.
template <typename State, typename Advance, typename Visit>
void walk_words(std::size_t nsym, std::size_t maxlen, std::size_t jobs, const State& root, const Advance& advance,
                const Visit& visit) {
    auto subtree = [&](auto&& self, std::size_t task, std::vector<std::size_t>& word, const State& st) -> void {
        visit(task, word, st);
        if (word.size() == maxlen) return;
        for (std::size_t s = 0; s < nsym; ++s) {
            word.push_back(s);
            State next = advance(st, s, word);
            self(self, task, word, next);
            word.pop_back();
        }
    };
    auto run_task = [&](std::size_t task) {
        std::vector<std::size_t> word;
        if (task == 0) {
            visit(0, word, root);
            return;
        }
        if (maxlen == 0) return;
        word.push_back(task - 1);
        State first = advance(root, task - 1, word);
        subtree(subtree, task, word, first);
    };

    const std::size_t tasks = nsym + 1;
    if (jobs <= 1) {
        for (std::size_t t = 0; t < tasks; ++t) run_task(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(tasks);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(jobs, tasks); ++w) {
        pool.emplace_back([&] {
            for (std::size_t t = next++; t < tasks; t = next++) {
                try {
                    run_task(t);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/// Advances a configuration set, tagging budget errors with the word.
struct SetAdvance {
    const Simulator& sim;
    const RunLimits& limits;

    ConfigSet operator()(const ConfigSet& cur, std::size_t s, const std::vector<std::size_t>& word) const {
        if (cur.empty()) return {};
        if (word.size() > limits.max_steps) {
            throw ResourceExceeded("input '" + format_word(decode_word(sim.machine().alphabet, word)) +
                                   "' exceeds the step budget");
        }
        try {
            return sim.advance(cur, s, limits.max_configs);
        } catch (const ResourceExceeded& e) {
            throw ResourceExceeded(std::string(e.what()) + " on input '" +
                                   format_word(decode_word(sim.machine().alphabet, word)) + "'");
        }
    }
};

}  // namespace detail

/// Every accepted word of length <= maxlen, in length-then-lexicographic
/// order.
inline std::vector<Word> enumerate_language(const Hva& m, std::size_t maxlen, const EnumOptions& opts = {}) {
    Simulator sim(m);
    const std::size_t nsym = m.alphabet.size();
    std::vector<std::vector<std::vector<std::size_t>>> found(nsym + 1);
    detail::walk_words(nsym, maxlen, opts.jobs, sim.initial(), detail::SetAdvance{sim, opts.limits},
                       [&](std::size_t task, const std::vector<std::size_t>& w, const ConfigSet& st) {
                           if (sim.accepts(st)) found[task].push_back(w);
                       });
    std::vector<std::vector<std::size_t>> all;
    for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
    std::sort(all.begin(), all.end(), shortlex_less);
    std::vector<Word> out;
    out.reserve(all.size());
    for (const auto& w : all) out.push_back(detail::decode_word(m.alphabet, w));
    return out;
}

struct Disagreement {
    Word word;
    bool left = false;   // machine (or first machine) accepts
    bool right = false;  // reference (or second machine) accepts
};

struct CheckReport {
    std::size_t strings_checked = 0;
    std::size_t accepted = 0;  // by the machine / first machine
    std::optional<Disagreement> disagreement;

    bool passed() const { return !disagreement.has_value(); }
};

namespace detail {

struct CheckSlot {
    std::size_t checked = 0;
    std::size_t accepted = 0;
    std::optional<std::pair<std::vector<std::size_t>, std::pair<bool, bool>>> first;

    void record(const std::vector<std::size_t>& w, bool left, bool right) {
        ++checked;
        accepted += left;
        if (left != right && (!first || shortlex_less(w, first->first))) first = {{w, {left, right}}};
    }
};

inline CheckReport merge_slots(const std::vector<CheckSlot>& slots, const std::vector<Symbol>& alphabet) {
    CheckReport r;
    const std::pair<std::vector<std::size_t>, std::pair<bool, bool>>* best = nullptr;
    for (const auto& s : slots) {
        r.strings_checked += s.checked;
        r.accepted += s.accepted;
        if (s.first && (!best || shortlex_less(s.first->first, best->first))) best = &*s.first;
    }
    if (best) r.disagreement = Disagreement{decode_word(alphabet, best->first), best->second.first, best->second.second};
    return r;
}

}  // namespace detail

/// Compares machine acceptance with `reference` on every word up to maxlen;
/// reports the earliest disagreement in enumeration order.
inline CheckReport cross_check(const Hva& m, const Predicate& reference, std::size_t maxlen,
                               const EnumOptions& opts = {}) {
    Simulator sim(m);
    const std::size_t nsym = m.alphabet.size();
    std::vector<detail::CheckSlot> slots(nsym + 1);
    detail::walk_words(nsym, maxlen, opts.jobs, sim.initial(), detail::SetAdvance{sim, opts.limits},
                       [&](std::size_t task, const std::vector<std::size_t>& w, const ConfigSet& st) {
                           slots[task].record(w, sim.accepts(st), reference(detail::decode_word(m.alphabet, w)));
                       });
    return detail::merge_slots(slots, m.alphabet);
}

/// Symmetric acceptance comparison of two machines over the same alphabet
/// (enumerated in the order of `a`'s alphabet).
inline CheckReport equivalence(const Hva& a, const Hva& b, std::size_t maxlen, const EnumOptions& opts = {}) {
    Simulator sa(a), sb(b);
    std::vector<std::size_t> b_index;
    for (const auto& s : a.alphabet) {
        auto i = b.symbol_index(s);
        if (!i) throw InvalidArgument("machines '" + a.name + "' and '" + b.name + "' have different alphabets");
        b_index.push_back(*i);
    }
    if (a.alphabet.size() != b.alphabet.size()) {
        throw InvalidArgument("machines '" + a.name + "' and '" + b.name + "' have different alphabets");
    }
    using Pair = std::pair<ConfigSet, ConfigSet>;
    detail::SetAdvance adv_a{sa, opts.limits}, adv_b{sb, opts.limits};
    auto advance = [&](const Pair& cur, std::size_t s, const std::vector<std::size_t>& w) {
        std::vector<std::size_t> wb;
        wb.reserve(w.size());
        for (auto x : w) wb.push_back(b_index[x]);
        return Pair{adv_a(cur.first, s, w), adv_b(cur.second, b_index[s], wb)};
    };
    const std::size_t nsym = a.alphabet.size();
    std::vector<detail::CheckSlot> slots(nsym + 1);
    detail::walk_words(nsym, maxlen, opts.jobs, Pair{sa.initial(), sb.initial()}, advance,
                       [&](std::size_t task, const std::vector<std::size_t>& w, const Pair& st) {
                           slots[task].record(w, sa.accepts(st.first), sb.accepts(st.second));
                       });
    return detail::merge_slots(slots, a.alphabet);
}

// ---------------------------------------------------------------------------
// Growth bounds
// ---------------------------------------------------------------------------

namespace detail {

inline BigInt ipow(BigInt base, std::size_t e) {
    BigInt r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// m^{n+1} k^n: the largest |entry| reachable after n steps when the initial
/// vector and every matrix have entries in [-m, m].
inline BigInt entry_bound(std::size_t m, std::size_t k, std::size_t n) {
    if (m < 1 || k < 1) throw InvalidArgument("entry_bound needs m, k >= 1");
    return detail::ipow(BigInt(m), n + 1) * detail::ipow(BigInt(k), n);
}

/// s (2 m^{n+1} k^n + 1)^k: number of distinct integer configurations an
/// s-state machine can reach after n steps under the same premise.
inline BigInt config_count_bound(std::size_t s, std::size_t m, std::size_t k, std::size_t n) {
    if (s < 1) throw InvalidArgument("config_count_bound needs s >= 1");
    return BigInt(s) * detail::ipow(2 * entry_bound(m, k, n) + 1, k);
}

struct LengthAudit {
    std::size_t n = 0;
    Rational observed;  // max |entry| over configurations reached by words of length n
    BigInt bound;       // entry_bound(m, k, n)
    BigInt config_bound;
};

struct BoundReport {
    std::size_t m = 1;  // max |matrix entry|, rounded up, at least 1
    std::size_t k = 0;
    std::size_t s = 0;
    bool premise_holds = true;  // initial vector entries lie in [-m, m]
    std::vector<LengthAudit> lengths;

    Rational max_observed() const {
        Rational r;
        for (const auto& l : lengths) r = std::max(r, l.observed);
        return r;
    }
};

/// Smallest integer m >= 1 with every matrix entry of `machine` in [-m, m].
inline std::size_t matrix_entry_bound(const Hva& machine) {
    Rational best(1);
    for (const auto& t : machine.transitions) best = std::max(best, max_abs_entry(t.matrix));
    BigInt ceil = best.numerator() / best.denominator();
    if (!best.is_integer()) ceil += 1;
    return ceil.convert_to<std::size_t>();
}

/// Runs every word up to maxlen and compares the largest entry seen at each
/// length with entry_bound. Throws InternalError on a violation.
inline BoundReport growth_audit(const Hva& machine, std::size_t maxlen, const EnumOptions& opts = {}) {
    Simulator sim(machine);
    BoundReport rep;
    rep.m = matrix_entry_bound(machine);
    rep.k = machine.dimension;
    rep.s = machine.states.size();
    rep.premise_holds = max_abs_entry(machine.initial_vector) <= Rational(static_cast<std::int64_t>(rep.m));

    const std::size_t nsym = machine.alphabet.size();
    std::vector<std::vector<Rational>> per_task(nsym + 1, std::vector<Rational>(maxlen + 1));
    detail::walk_words(nsym, maxlen, opts.jobs, sim.initial(), detail::SetAdvance{sim, opts.limits},
                       [&](std::size_t task, const std::vector<std::size_t>& w, const ConfigSet& st) {
                           auto& slot = per_task[task][w.size()];
                           for (const auto& c : st) slot = std::max(slot, max_abs_entry(c.vector));
                       });
    for (std::size_t n = 0; n <= maxlen; ++n) {
        LengthAudit la;
        la.n = n;
        for (const auto& t : per_task) la.observed = std::max(la.observed, t[n]);
        la.bound = entry_bound(rep.m, rep.k, n);
        la.config_bound = config_count_bound(rep.s, rep.m, rep.k, n);
        if (rep.premise_holds && la.observed > Rational(la.bound)) {
            throw InternalError("entry bound violated by '" + machine.name + "' at length " + std::to_string(n) +
                                ": observed " + la.observed.str() + " > " + la.bound.str());
        }
        rep.lengths.push_back(std::move(la));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Unary DFA extraction
// ---------------------------------------------------------------------------

/// DFA over the unary alphabet: state i moves to successor[i] on each symbol.
struct Dfa {
    std::size_t initial = 0;
    std::vector<bool> accepting;
    std::vector<std::size_t> successor;

    std::size_t size() const { return successor.size(); }

    bool accepts(std::size_t length) const {
        std::size_t q = initial;
        for (std::size_t i = 0; i < length; ++i) q = successor[q];
        return accepting[q];
    }

    /// Line-oriented text form: "states N", "initial Q", "accepting ...",
    /// "successors ..." (one successor per state, in state order).
    std::string str() const {
        std::string out = "states " + std::to_string(size()) + "\ninitial " + std::to_string(initial) + "\naccepting";
        for (std::size_t q = 0; q < size(); ++q) {
            if (accepting[q]) out += " " + std::to_string(q);
        }
        out += "\nsuccessors";
        for (auto s : successor) out += " " + std::to_string(s);
        return out + "\n";
    }
};

struct UnaryExtraction {
    std::optional<Dfa> dfa;  // empty: undetermined within the budget
    std::size_t prefix = 0;  // |w1|
    std::size_t period = 0;  // |w2| - |w1|, 0 for a finite language
    std::string reason;
};

/// Builds a DFA for the language of a deterministic unary machine by
/// looking for two lengths i < j whose accepting configurations coincide
/// (same accept state, vector back at v). From then on the run repeats with
/// period j - i. A run that dies yields a finite language. Otherwise the
/// result is undetermined. Any DFA returned has been re-checked against
/// direct simulation up to 3 * budget symbols.
inline UnaryExtraction unary_dfa_extract(const Hva& machine, std::size_t budget) {
    if (machine.alphabet.size() != 1) throw InvalidArgument("unary_dfa_extract needs a one-symbol alphabet");
    if (!machine.deterministic) throw InvalidArgument("unary_dfa_extract needs a deterministic machine");
    Simulator sim(machine);
    const std::size_t limit = 3 * budget;

    std::vector<bool> accepted;  // accepted[n] for a^n, simulated lazily
    ConfigSet cur = sim.initial();
    auto simulate_to = [&](std::size_t n) {
        while (accepted.size() <= n) {
            if (!accepted.empty()) cur = sim.advance(cur, 0, 1);
            accepted.push_back(sim.accepts(cur));
        }
    };

    UnaryExtraction out;
    std::optional<std::size_t> died_at;
    std::vector<std::optional<std::size_t>> first_accept_at(machine.states.size());
    for (std::size_t n = 0; n <= budget; ++n) {
        simulate_to(n);
        if (cur.empty()) {
            died_at = n;
            break;
        }
        if (!accepted[n]) continue;
        const std::size_t q = cur.begin()->state;
        if (first_accept_at[q]) {
            out.prefix = *first_accept_at[q];
            out.period = n - out.prefix;
            break;
        }
        first_accept_at[q] = n;
    }

    Dfa dfa;
    if (died_at) {
        const std::size_t d = *died_at;
        for (std::size_t i = 0; i < d; ++i) {
            dfa.accepting.push_back(accepted[i]);
            dfa.successor.push_back(i + 1);
        }
        dfa.accepting.push_back(false);
        dfa.successor.push_back(d);
        out.prefix = d;
        out.reason = "run dies after " + std::to_string(d) + " symbols; language is finite";
    } else if (out.period > 0) {
        const std::size_t states = out.prefix + out.period;
        for (std::size_t i = 0; i < states; ++i) {
            dfa.accepting.push_back(accepted[i]);
            dfa.successor.push_back(i + 1 < states ? i + 1 : out.prefix);
        }
        out.reason = "accepting configuration at length " + std::to_string(out.prefix) + " recurs after " +
                     std::to_string(out.period) + " symbols";
    } else {
        out.reason = "no accepting configuration repeated within " + std::to_string(budget) + " symbols";
        return out;
    }

    for (std::size_t n = 0; n <= limit; ++n) {
        simulate_to(n);
        if (dfa.accepts(n) != accepted[n]) {
            throw InternalError("extracted DFA disagrees with simulation of '" + machine.name + "' at length " +
                                std::to_string(n));
        }
    }
    out.dfa = std::move(dfa);
    return out;
}

}  // namespace hva

#endif  // HVA_ANALYSIS_HPP

#ifndef HVA_COUNTER_HPP
#define HVA_COUNTER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hva/error.hpp"
#include "hva/format.hpp"
#include "hva/linalg.hpp"
#include "hva/machine.hpp"

namespace hva {

enum class Acceptance {
    State,         // accept state reached
    StateAndZero,  // accept state reached and every counter is 0
};

/// Per-counter observation of a non-blind counter machine.
enum class ZeroTest { Eq, Neq };

struct CounterTransition {
    std::size_t from = 0;
    std::size_t symbol = 0;
    /// Absent on blind machines; absent on a non-blind machine means the
    /// transition applies under every zero pattern.
    std::optional<std::vector<ZeroTest>> zero_pattern;
    std::size_t to = 0;
    std::vector<int> increments;  // each in {-1, 0, +1}
};

/// Real-time deterministic k-counter automaton, blind or zero-testing.
/// Counters start at 0; there are no endmarker transitions.
struct CounterMachine {
    std::string name;
    std::size_t k = 0;
    bool blind = true;
    Acceptance acceptance = Acceptance::StateAndZero;
    std::vector<Symbol> alphabet;
    std::vector<std::string> states;
    std::size_t initial_state = 0;
    std::vector<std::size_t> accept_states;
    std::vector<CounterTransition> transitions;

    bool is_accepting(std::size_t q) const {
        return std::find(accept_states.begin(), accept_states.end(), q) != accept_states.end();
    }
};

struct CounterConfig {
    std::size_t state = 0;
    std::vector<std::int64_t> counters;

    friend bool operator==(const CounterConfig&, const CounterConfig&) = default;
};

inline std::vector<std::string> validate(const CounterMachine& m) {
    std::vector<std::string> out;
    if (m.states.empty()) out.push_back("machine has no states");
    if (m.alphabet.empty()) out.push_back("alphabet is empty");
    if (m.initial_state >= m.states.size()) out.push_back("initial_state is not a state");
    for (auto q : m.accept_states) {
        if (q >= m.states.size()) out.push_back("accept state #" + std::to_string(q) + " is not a state");
    }
    if (!m.blind && m.k > 16) out.push_back("zero-testing machines support at most 16 counters");
    if (out.size()) return out;

    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> per_key;
    for (std::size_t t = 0; t < m.transitions.size(); ++t) {
        const auto& tr = m.transitions[t];
        const std::string where = "transition " + std::to_string(t + 1);
        if (tr.from >= m.states.size() || tr.to >= m.states.size()) out.push_back(where + ": unknown state");
        if (tr.symbol >= m.alphabet.size()) out.push_back(where + ": symbol is not in the alphabet");
        if (tr.increments.size() != m.k) {
            out.push_back(where + ": " + std::to_string(tr.increments.size()) + " increments for " +
                          std::to_string(m.k) + " counters");
        }
        for (int c : tr.increments) {
            if (c < -1 || c > 1) out.push_back(where + ": increment " + std::to_string(c) + " outside {-1, 0, 1}");
        }
        if (tr.zero_pattern) {
            if (m.blind) out.push_back(where + ": blind machine uses a zero test");
            if (tr.zero_pattern->size() != m.k) out.push_back(where + ": zero_pattern length differs from counters");
        }
        per_key[{tr.from, tr.symbol}].push_back(t);
    }
    if (!out.empty()) return out;

    for (const auto& [key, ts] : per_key) {
        const std::string where = "(" + m.states[key.first] + ", " + m.alphabet[key.second] + ")";
        if (m.blind) {
            if (ts.size() > 1) out.push_back("nondeterminism on " + where);
            continue;
        }
        for (std::size_t pattern = 0; pattern < (std::size_t{1} << m.k); ++pattern) {
            std::size_t hits = 0;
            for (auto t : ts) {
                const auto& zp = m.transitions[t].zero_pattern;
                bool applies = true;
                for (std::size_t i = 0; zp && i < m.k; ++i) {
                    const bool zero = !(pattern >> i & 1);
                    applies = applies && ((*zp)[i] == ZeroTest::Eq) == zero;
                }
                hits += applies;
            }
            if (hits > 1) {
                out.push_back("nondeterminism on " + where);
                break;
            }
        }
    }
    return out;
}

inline void require_valid(const CounterMachine& m) {
    auto violations = validate(m);
    if (violations.empty()) return;
    std::string msg = "counter machine '" + m.name + "' is invalid:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw InvalidArgument(msg);
}

namespace detail {

inline const CounterTransition* counter_transition(const CounterMachine& m, const CounterConfig& c,
                                                   std::size_t symbol) {
    for (const auto& tr : m.transitions) {
        if (tr.from != c.state || tr.symbol != symbol) continue;
        if (!m.blind && tr.zero_pattern) {
            bool applies = true;
            for (std::size_t i = 0; i < m.k; ++i) {
                applies = applies && ((*tr.zero_pattern)[i] == ZeroTest::Eq) == (c.counters[i] == 0);
            }
            if (!applies) continue;
        }
        return &tr;
    }
    return nullptr;
}

inline std::size_t counter_symbol(const CounterMachine& m, const Symbol& s) {
    auto it = std::find(m.alphabet.begin(), m.alphabet.end(), s);
    if (it == m.alphabet.end()) throw InvalidArgument("symbol '" + s + "' is not in the alphabet of '" + m.name + "'");
    return static_cast<std::size_t>(it - m.alphabet.begin());
}

}  // namespace detail

/// Configuration after each prefix, starting with (q0, 0...0). Shorter than
/// |input| + 1 when the run dies on a missing transition.
inline std::vector<CounterConfig> trace_counter(const CounterMachine& m, const Word& input) {
    require_valid(m);
    std::vector<CounterConfig> out{CounterConfig{m.initial_state, std::vector<std::int64_t>(m.k, 0)}};
    for (const auto& s : input) {
        const auto symbol = detail::counter_symbol(m, s);
        const auto* tr = detail::counter_transition(m, out.back(), symbol);
        if (!tr) break;
        CounterConfig next = out.back();
        next.state = tr->to;
        for (std::size_t i = 0; i < m.k; ++i) next.counters[i] += tr->increments[i];
        out.push_back(std::move(next));
    }
    return out;
}

inline bool run_counter(const CounterMachine& m, const Word& input) {
    const auto tr = trace_counter(m, input);
    if (tr.size() != input.size() + 1) return false;
    const auto& last = tr.back();
    if (!m.is_accepting(last.state)) return false;
    if (m.blind || m.acceptance == Acceptance::StateAndZero) {
        return std::all_of(last.counters.begin(), last.counters.end(), [](std::int64_t c) { return c == 0; });
    }
    return true;
}

/// Matrix of dimension k+1 that adds increments[i] times the pinned last
/// entry to entry i: identity plus M(k+1, i) = increments[i].
inline Matrix counter_update_matrix(const std::vector<int>& increments) {
    const std::size_t k = increments.size();
    Matrix m = Matrix::identity(k + 1);
    for (std::size_t i = 0; i < k; ++i) m.at(k, i) = Rational(increments[i]);
    return m;
}

namespace detail {

inline void require_homing_acceptance(const CounterMachine& m) {
    if (m.acceptance != Acceptance::StateAndZero) {
        throw InvalidArgument("counter machine '" + m.name +
                              "' accepts by state only; only state_and_zero acceptance compiles to a homing machine");
    }
}

}  // namespace detail

/// DkBCA -> DBHVA(k+1). Entry i carries 1 + counter_i, entry k+1 stays 1;
/// the vector returns to all-ones exactly when every counter is 0.
inline Hva compile_blind(const CounterMachine& m) {
    require_valid(m);
    if (!m.blind) throw InvalidArgument("compile_blind needs a blind counter machine");
    detail::require_homing_acceptance(m);
    Hva out;
    out.name = m.name + "_hva";
    out.dimension = m.k + 1;
    out.alphabet = m.alphabet;
    out.states = m.states;
    out.initial_state = m.initial_state;
    out.accept_states = m.accept_states;
    out.initial_vector = Vector::ones(m.k + 1);
    out.deterministic = true;
    out.blind = true;
    for (const auto& tr : m.transitions) {
        out.transitions.push_back(Transition{tr.from, tr.symbol, Guard::Any, tr.to, counter_update_matrix(tr.increments)});
    }
    require_valid(out);
    return out;
}

/// D1CA with empty-counter acceptance -> DHVA(2). Counter c is held as
/// [1+c 1]; a zero test becomes an EQ/NEQ guard on the whole vector.
inline Hva compile_one_counter(const CounterMachine& m) {
    require_valid(m);
    if (m.k != 1) {
        throw InvalidArgument("compile_one_counter needs exactly one counter, got " + std::to_string(m.k) +
                              " (individual vector entries cannot be tested)");
    }
    detail::require_homing_acceptance(m);
    Hva out;
    out.name = m.name + "_hva";
    out.dimension = 2;
    out.alphabet = m.alphabet;
    out.states = m.states;
    out.initial_state = m.initial_state;
    out.accept_states = m.accept_states;
    out.initial_vector = Vector::ones(2);
    out.deterministic = true;
    out.blind = m.blind;
    for (const auto& tr : m.transitions) {
        Guard g = Guard::Any;
        if (tr.zero_pattern) g = tr.zero_pattern->front() == ZeroTest::Eq ? Guard::Eq : Guard::Neq;
        out.transitions.push_back(Transition{tr.from, tr.symbol, g, tr.to, counter_update_matrix(tr.increments)});
    }
    require_valid(out);
    return out;
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

inline CounterMachine counter_from_json(const Json& j) {
    using detail::typed;
    CounterMachine m;
    m.name = typed<std::string>(j, "name");
    const auto k = typed<long long>(j, "counters");
    if (k < 0) throw InvalidArgument("\"counters\" must be non-negative");
    m.k = static_cast<std::size_t>(k);
    m.blind = typed<bool>(j, "blind");
    const auto acc = typed<std::string>(j, "acceptance");
    if (acc == "state") {
        m.acceptance = Acceptance::State;
    } else if (acc == "state_and_zero") {
        m.acceptance = Acceptance::StateAndZero;
    } else {
        throw InvalidArgument("unknown acceptance \"" + acc + "\" (expected state or state_and_zero)");
    }
    m.alphabet = typed<std::vector<std::string>>(j, "alphabet");
    m.states = typed<std::vector<std::string>>(j, "states");
    m.initial_state = detail::index_in(m.states, typed<std::string>(j, "initial_state"), "state");
    for (const auto& s : typed<std::vector<std::string>>(j, "accept_states")) {
        m.accept_states.push_back(detail::index_in(m.states, s, "state"));
    }
    const Json& ts = detail::field(j, "transitions");
    if (!ts.is_array()) throw InvalidArgument("\"transitions\" must be an array");
    for (const auto& t : ts) {
        CounterTransition tr;
        tr.from = detail::index_in(m.states, typed<std::string>(t, "from"), "state");
        tr.symbol = detail::index_in(m.alphabet, typed<std::string>(t, "symbol"), "symbol");
        tr.to = detail::index_in(m.states, typed<std::string>(t, "to"), "state");
        tr.increments = typed<std::vector<int>>(t, "increments");
        if (t.contains("zero_pattern")) {
            std::vector<ZeroTest> zp;
            for (const auto& z : typed<std::vector<std::string>>(t, "zero_pattern")) {
                if (z == "eq") {
                    zp.push_back(ZeroTest::Eq);
                } else if (z == "neq") {
                    zp.push_back(ZeroTest::Neq);
                } else {
                    throw InvalidArgument("unknown zero test \"" + z + "\" (expected eq or neq)");
                }
            }
            tr.zero_pattern = std::move(zp);
        }
        m.transitions.push_back(std::move(tr));
    }
    require_valid(m);
    return m;
}

inline CounterMachine counter_from_string(const std::string& text) {
    return counter_from_json(detail::parse_json(text));
}

inline CounterMachine load_counter(const std::string& path) { return counter_from_string(detail::read_file(path)); }

inline Json to_json(const CounterMachine& m) {
    Json j;
    j["name"] = m.name;
    j["counters"] = m.k;
    j["blind"] = m.blind;
    j["acceptance"] = m.acceptance == Acceptance::State ? "state" : "state_and_zero";
    j["alphabet"] = m.alphabet;
    j["states"] = m.states;
    j["initial_state"] = m.states.at(m.initial_state);
    Json accept = Json::array();
    for (auto q : m.accept_states) accept.push_back(m.states.at(q));
    j["accept_states"] = std::move(accept);
    Json ts = Json::array();
    for (const auto& t : m.transitions) {
        Json tj;
        tj["from"] = m.states.at(t.from);
        tj["symbol"] = m.alphabet.at(t.symbol);
        tj["to"] = m.states.at(t.to);
        tj["increments"] = t.increments;
        if (t.zero_pattern) {
            Json zp = Json::array();
            for (auto z : *t.zero_pattern) zp.push_back(z == ZeroTest::Eq ? "eq" : "neq");
            tj["zero_pattern"] = std::move(zp);
        }
        ts.push_back(std::move(tj));
    }
    j["transitions"] = std::move(ts);
    return j;
}

}  // namespace hva

#endif  // HVA_COUNTER_HPP

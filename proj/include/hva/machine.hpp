#ifndef HVA_MACHINE_HPP
#define HVA_MACHINE_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "hva/error.hpp"
#include "hva/linalg.hpp"

namespace hva {

/// Observation a non-blind transition is conditioned on: whether the current
/// vector equals the initial vector. `Any` fires regardless and is the only
/// guard a blind machine may use.
enum class Guard { Eq, Neq, Any };

inline const char* to_string(Guard g) {
    switch (g) {
        case Guard::Eq: return "eq";
        case Guard::Neq: return "neq";
        case Guard::Any: return "any";
    }
    return "?";
}

using Symbol = std::string;
using Word = std::vector<Symbol>;

/// One symbol per character: "aab" -> {"a", "a", "b"}.
inline Word chars(std::string_view text) {
    Word w;
    w.reserve(text.size());
    for (char c : text) w.emplace_back(1, c);
    return w;
}

/// Comma-separated symbols: "a_1,a_2,#" -> {"a_1", "a_2", "#"}; "" -> {}.
inline Word split_csv(std::string_view text) {
    Word w;
    if (text.empty()) return w;
    std::size_t start = 0;
    while (true) {
        auto comma = text.find(',', start);
        w.emplace_back(text.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return w;
}

/// Renders a word: concatenated when every symbol is one character,
/// comma-separated otherwise.
inline std::string format_word(const Word& w) {
    bool single = std::all_of(w.begin(), w.end(), [](const Symbol& s) { return s.size() == 1; });
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i && !single) out += ',';
        out += w[i];
    }
    return out;
}

struct Transition {
    std::size_t from = 0;
    std::size_t symbol = 0;
    Guard guard = Guard::Any;
    std::size_t to = 0;
    Matrix matrix;
};

/// A homing vector automaton (Q, Sigma, delta, q0, Q_a, v) of dimension k.
///
/// States and symbols are referred to by index into `states` / `alphabet`.
/// The four model variants are selected by the `deterministic` and `blind`
/// flags; `validate()` checks that the transition table honours them.
struct Hva {
    std::string name;
    std::size_t dimension = 0;
    std::vector<Symbol> alphabet;
    std::vector<std::string> states;
    std::size_t initial_state = 0;
    std::vector<std::size_t> accept_states;
    Vector initial_vector;
    bool deterministic = true;
    bool blind = false;
    std::vector<Transition> transitions;

    std::optional<std::size_t> symbol_index(std::string_view s) const {
        auto it = std::find(alphabet.begin(), alphabet.end(), s);
        if (it == alphabet.end()) return std::nullopt;
        return static_cast<std::size_t>(it - alphabet.begin());
    }

    std::optional<std::size_t> state_index(std::string_view s) const {
        auto it = std::find(states.begin(), states.end(), s);
        if (it == states.end()) return std::nullopt;
        return static_cast<std::size_t>(it - states.begin());
    }

    bool is_accepting(std::size_t state) const {
        return std::find(accept_states.begin(), accept_states.end(), state) != accept_states.end();
    }
};

/// Name-based construction helper for hand-written machines.
class HvaBuilder {
public:
    HvaBuilder(std::string name, std::vector<Symbol> alphabet, Vector initial_vector) {
        m_.name = std::move(name);
        m_.alphabet = std::move(alphabet);
        m_.dimension = initial_vector.dim();
        m_.initial_vector = std::move(initial_vector);
    }

    HvaBuilder& deterministic(bool d) {
        m_.deterministic = d;
        return *this;
    }
    HvaBuilder& blind(bool b) {
        m_.blind = b;
        return *this;
    }

    /// Declares a state; the first declared state is the initial one.
    HvaBuilder& state(const std::string& name, bool accepting = false) {
        if (m_.state_index(name)) throw InvalidArgument("duplicate state '" + name + "'");
        m_.states.push_back(name);
        if (accepting) m_.accept_states.push_back(m_.states.size() - 1);
        return *this;
    }

    HvaBuilder& on(const std::string& from, const Symbol& symbol, Guard guard, const std::string& to, Matrix matrix) {
        m_.transitions.push_back(Transition{state_of(from), symbol_of(symbol), guard, state_of(to), std::move(matrix)});
        return *this;
    }

    HvaBuilder& on(const std::string& from, const Symbol& symbol, const std::string& to, Matrix matrix) {
        return on(from, symbol, Guard::Any, to, std::move(matrix));
    }

    Hva build() const { return m_; }

private:
    std::size_t state_of(const std::string& s) const {
        if (auto i = m_.state_index(s)) return *i;
        throw InvalidArgument("unknown state '" + s + "'");
    }
    std::size_t symbol_of(const Symbol& s) const {
        if (auto i = m_.symbol_index(s)) return *i;
        throw InvalidArgument("unknown symbol '" + s + "'");
    }

    Hva m_;
};

/// Lists every violated structural invariant; empty means well-formed.
inline std::vector<std::string> validate(const Hva& m) {
    std::vector<std::string> out;
    auto state_name = [&](std::size_t q) {
        return q < m.states.size() ? m.states[q] : "#" + std::to_string(q);
    };
    auto symbol_name = [&](std::size_t s) {
        return s < m.alphabet.size() ? m.alphabet[s] : "#" + std::to_string(s);
    };

    if (m.dimension < 1) out.push_back("dimension must be at least 1");
    if (m.initial_vector.dim() != m.dimension) {
        out.push_back("initial_vector has " + std::to_string(m.initial_vector.dim()) + " entries, dimension is " +
                      std::to_string(m.dimension));
    }
    if (m.states.empty()) out.push_back("machine has no states");
    if (m.alphabet.empty()) out.push_back("alphabet is empty");
    {
        std::set<std::string> seen;
        for (const auto& s : m.states) {
            if (!seen.insert(s).second) out.push_back("duplicate state '" + s + "'");
        }
    }
    {
        std::set<std::string> seen;
        for (const auto& s : m.alphabet) {
            if (s.empty()) {
                out.push_back("empty alphabet symbol");
                continue;
            }
            if (s.find_first_of(", \t\r\n") != std::string::npos) {
                out.push_back("alphabet symbol '" + s + "' contains a comma or whitespace");
            }
            if (!seen.insert(s).second) out.push_back("duplicate alphabet symbol '" + s + "'");
        }
    }
    if (m.initial_state >= m.states.size()) out.push_back("initial_state is not a state");
    for (auto q : m.accept_states) {
        if (q >= m.states.size()) out.push_back("accept state #" + std::to_string(q) + " is not a state");
    }

    // (from, symbol) -> counts of {eq, neq, any}
    std::map<std::pair<std::size_t, std::size_t>, std::array<int, 3>> per_key;
    for (std::size_t t = 0; t < m.transitions.size(); ++t) {
        const auto& tr = m.transitions[t];
        std::string where = "transition " + std::to_string(t + 1) + " (" + state_name(tr.from) + " --" +
                            symbol_name(tr.symbol) + "/" + to_string(tr.guard) + "--> " + state_name(tr.to) + ")";
        if (tr.from >= m.states.size()) out.push_back(where + ": source is not a state");
        if (tr.to >= m.states.size()) out.push_back(where + ": target is not a state");
        if (tr.symbol >= m.alphabet.size()) out.push_back(where + ": symbol is not in the alphabet");
        if (tr.matrix.dim() != m.dimension) {
            out.push_back(where + ": matrix is " + std::to_string(tr.matrix.dim()) + "x" +
                          std::to_string(tr.matrix.dim()) + ", dimension is " + std::to_string(m.dimension));
        }
        if (m.blind && tr.guard != Guard::Any) out.push_back(where + ": blind machine uses a vector guard");
        per_key[{tr.from, tr.symbol}][static_cast<int>(tr.guard)]++;
    }
    if (m.deterministic) {
        for (const auto& [key, n] : per_key) {
            const int eq = n[0], neq = n[1], any = n[2];
            if (eq + any > 1 || neq + any > 1) {
                out.push_back("nondeterminism on (" + state_name(key.first) + ", " + symbol_name(key.second) +
                              "): " + std::to_string(eq) + " eq, " + std::to_string(neq) + " neq, " +
                              std::to_string(any) + " any transitions");
            }
        }
    }
    return out;
}

/// Throws InvalidArgument listing the violations, if any.
inline void require_valid(const Hva& m) {
    auto violations = validate(m);
    if (violations.empty()) return;
    std::string msg = "machine '" + m.name + "' is invalid:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw InvalidArgument(msg);
}

struct Configuration {
    std::size_t state = 0;
    Vector vector;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct ConfigurationLess {
    bool operator()(const Configuration& a, const Configuration& b) const {
        if (a.state != b.state) return a.state < b.state;
        return VectorLess{}(a.vector, b.vector);
    }
};

using ConfigSet = std::set<Configuration, ConfigurationLess>;

struct RunLimits {
    std::size_t max_configs = 100000;
    std::size_t max_steps = std::numeric_limits<std::size_t>::max();
    /// Turning this off keeps duplicate configurations; only useful for
    /// cross-checking that deduplication is sound.
    bool deduplicate = true;
};

struct RunStats {
    std::size_t steps = 0;
    std::size_t max_configs = 0;
    Rational max_entry;
};

struct RunResult {
    bool accepted = false;
    ConfigSet final_configs;
    RunStats stats;
};

/// Indexed view of a machine for repeated simulation. Holds a reference; the
/// machine must outlive the simulator.
class Simulator {
public:
    explicit Simulator(const Hva& m) : m_(m), table_(m.states.size() * m.alphabet.size()) {
        require_valid(m);
        for (std::size_t t = 0; t < m.transitions.size(); ++t) {
            const auto& tr = m.transitions[t];
            table_[tr.from * m.alphabet.size() + tr.symbol].push_back(t);
        }
    }

    const Hva& machine() const noexcept { return m_; }

    std::size_t symbol_index(const Symbol& s) const {
        if (auto i = m_.symbol_index(s)) return *i;
        throw InvalidArgument("symbol '" + s + "' is not in the alphabet of '" + m_.name + "'");
    }

    std::vector<std::size_t> encode(const Word& w) const {
        std::vector<std::size_t> out;
        out.reserve(w.size());
        for (const auto& s : w) out.push_back(symbol_index(s));
        return out;
    }

    ConfigSet initial() const { return ConfigSet{Configuration{m_.initial_state, m_.initial_vector}}; }

    bool is_accepting(const Configuration& c) const {
        return m_.is_accepting(c.state) && c.vector == m_.initial_vector;
    }

    bool accepts(const ConfigSet& s) const {
        return std::any_of(s.begin(), s.end(), [&](const Configuration& c) { return is_accepting(c); });
    }

    /// Applies every transition enabled at `c` on `symbol` (guard evaluated
    /// on the vector before multiplication) and hands each successor to `out`.
    template <typename Sink>
    void successors(const Configuration& c, std::size_t symbol, Sink&& out) const {
        const auto& candidates = table_[c.state * m_.alphabet.size() + symbol];
        if (candidates.empty()) return;
        const bool at_home = c.vector == m_.initial_vector;
        for (auto t : candidates) {
            const auto& tr = m_.transitions[t];
            if (tr.guard == Guard::Eq && !at_home) continue;
            if (tr.guard == Guard::Neq && at_home) continue;
            out(Configuration{tr.to, vec_mat_mul(c.vector, tr.matrix)});
        }
    }

    /// One real-time step of a whole configuration set.
    ConfigSet advance(const ConfigSet& current, std::size_t symbol, std::size_t max_configs) const {
        ConfigSet next;
        for (const auto& c : current) {
            successors(c, symbol, [&](Configuration&& n) {
                next.insert(std::move(n));
                if (next.size() > max_configs) {
                    throw ResourceExceeded("configuration set exceeded " + std::to_string(max_configs) +
                                           " configurations");
                }
            });
        }
        return next;
    }

private:
    const Hva& m_;
    std::vector<std::vector<std::size_t>> table_;
};

/// Successor configurations of `config` on `symbol`; empty when no
/// transition applies.
inline ConfigSet step(const Hva& m, const Configuration& config, const Symbol& symbol) {
    Simulator sim(m);
    ConfigSet out;
    sim.successors(config, sim.symbol_index(symbol), [&](Configuration&& n) { out.insert(std::move(n)); });
    return out;
}

namespace detail {

inline void note_entries(RunStats& stats, const Vector& v) {
    Rational e = max_abs_entry(v);
    if (e > stats.max_entry) stats.max_entry = std::move(e);
}

inline void check_steps(std::size_t steps, const RunLimits& limits) {
    if (steps > limits.max_steps) {
        throw ResourceExceeded("input exceeds the step budget of " + std::to_string(limits.max_steps));
    }
}

}  // namespace detail

/// Real-time run: one step per input symbol, breadth-first over
/// deduplicated configuration sets, acceptance checked after the last
/// symbol. Throws ResourceExceeded when a budget is hit.
inline RunResult run(const Hva& m, const Word& input, const RunLimits& limits = {}) {
    Simulator sim(m);
    const auto symbols = sim.encode(input);
    detail::check_steps(symbols.size(), limits);
    RunResult result;
    detail::note_entries(result.stats, m.initial_vector);
    result.stats.max_configs = 1;

    if (limits.deduplicate) {
        ConfigSet current = sim.initial();
        for (auto s : symbols) {
            current = sim.advance(current, s, limits.max_configs);
            ++result.stats.steps;
            result.stats.max_configs = std::max(result.stats.max_configs, current.size());
            for (const auto& c : current) detail::note_entries(result.stats, c.vector);
        }
        result.accepted = sim.accepts(current);
        result.final_configs = std::move(current);
        return result;
    }

    std::vector<Configuration> current{Configuration{m.initial_state, m.initial_vector}};
    for (auto s : symbols) {
        std::vector<Configuration> next;
        for (const auto& c : current) {
            sim.successors(c, s, [&](Configuration&& n) {
                next.push_back(std::move(n));
                if (next.size() > limits.max_configs) {
                    throw ResourceExceeded("configuration list exceeded " + std::to_string(limits.max_configs) +
                                           " entries");
                }
            });
        }
        current = std::move(next);
        ++result.stats.steps;
        result.stats.max_configs = std::max(result.stats.max_configs, current.size());
        for (const auto& c : current) detail::note_entries(result.stats, c.vector);
    }
    result.accepted =
        std::any_of(current.begin(), current.end(), [&](const Configuration& c) { return sim.is_accepting(c); });
    result.final_configs = ConfigSet(current.begin(), current.end());
    return result;
}

/// Configuration set after each prefix of `input`, starting with {(q0, v)}.
inline std::vector<ConfigSet> trace(const Hva& m, const Word& input, const RunLimits& limits = {}) {
    Simulator sim(m);
    const auto symbols = sim.encode(input);
    detail::check_steps(symbols.size(), limits);
    std::vector<ConfigSet> out;
    out.reserve(symbols.size() + 1);
    out.push_back(sim.initial());
    for (auto s : symbols) out.push_back(sim.advance(out.back(), s, limits.max_configs));
    return out;
}

inline bool accepts(const Hva& m, const Word& input, const RunLimits& limits = {}) {
    return run(m, input, limits).accepted;
}

}  // namespace hva

#endif  // HVA_MACHINE_HPP

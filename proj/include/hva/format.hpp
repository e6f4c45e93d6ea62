#ifndef HVA_FORMAT_HPP
#define HVA_FORMAT_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hva/error.hpp"
#include "hva/machine.hpp"

namespace hva {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

template <typename T>
T typed(const Json& j, const char* key) {
    const Json& v = field(j, key);
    try {
        return v.get<T>();
    } catch (const nlohmann::json::exception&) {
        throw InvalidArgument(std::string("field \"") + key + "\" has the wrong type");
    }
}

inline Rational rational_of(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    throw InvalidArgument("rational must be a string like \"-1/2\"");
}

inline Vector vector_of(const Json& j) {
    if (!j.is_array()) throw InvalidArgument("vector must be an array of rational strings");
    std::vector<Rational> entries;
    for (const auto& e : j) entries.push_back(rational_of(e));
    return Vector(std::move(entries));
}

inline Matrix matrix_of(const Json& j) {
    if (!j.is_array()) throw InvalidArgument("matrix must be an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) throw InvalidArgument("matrix row must be an array");
        std::vector<Rational> r;
        for (const auto& e : row) r.push_back(rational_of(e));
        rows.push_back(std::move(r));
    }
    return Matrix::from_rows(rows);
}

inline Json json_of(const Vector& v) {
    Json out = Json::array();
    for (const auto& e : v) out.push_back(e.str());
    return out;
}

inline Json json_of(const Matrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m.at(i, j).str());
        out.push_back(std::move(row));
    }
    return out;
}

inline Guard guard_of(const std::string& s) {
    if (s == "eq") return Guard::Eq;
    if (s == "neq") return Guard::Neq;
    if (s == "any") return Guard::Any;
    throw InvalidArgument("unknown guard \"" + s + "\" (expected eq, neq or any)");
}

inline std::size_t index_in(const std::vector<std::string>& names, const std::string& s, const char* what) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == s) return i;
    }
    throw InvalidArgument(std::string("unknown ") + what + " \"" + s + "\"");
}

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(std::string("malformed JSON: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

/// Parses the machine-definition JSON document. The result is validated;
/// any violation is reported as InvalidArgument.
inline Hva hva_from_json(const Json& j) {
    using detail::typed;
    Hva m;
    m.name = typed<std::string>(j, "name");
    const auto dim = typed<long long>(j, "dimension");
    if (dim < 1) throw InvalidArgument("dimension must be at least 1");
    m.dimension = static_cast<std::size_t>(dim);
    m.alphabet = typed<std::vector<std::string>>(j, "alphabet");
    m.states = typed<std::vector<std::string>>(j, "states");
    m.initial_state = detail::index_in(m.states, typed<std::string>(j, "initial_state"), "state");
    for (const auto& s : typed<std::vector<std::string>>(j, "accept_states")) {
        m.accept_states.push_back(detail::index_in(m.states, s, "state"));
    }
    m.deterministic = typed<bool>(j, "deterministic");
    m.blind = typed<bool>(j, "blind");
    m.initial_vector = detail::vector_of(detail::field(j, "initial_vector"));
    const Json& ts = detail::field(j, "transitions");
    if (!ts.is_array()) throw InvalidArgument("\"transitions\" must be an array");
    for (const auto& t : ts) {
        Transition tr;
        tr.from = detail::index_in(m.states, typed<std::string>(t, "from"), "state");
        tr.symbol = detail::index_in(m.alphabet, typed<std::string>(t, "symbol"), "symbol");
        tr.guard = detail::guard_of(typed<std::string>(t, "guard"));
        tr.to = detail::index_in(m.states, typed<std::string>(t, "to"), "state");
        tr.matrix = detail::matrix_of(detail::field(t, "matrix"));
        m.transitions.push_back(std::move(tr));
    }
    require_valid(m);
    return m;
}

inline Hva hva_from_string(const std::string& text) { return hva_from_json(detail::parse_json(text)); }

inline Hva load_hva(const std::string& path) { return hva_from_string(detail::read_file(path)); }

inline Json to_json(const Hva& m) {
    Json j;
    j["name"] = m.name;
    j["dimension"] = m.dimension;
    j["alphabet"] = m.alphabet;
    j["states"] = m.states;
    j["initial_state"] = m.states.at(m.initial_state);
    Json accept = Json::array();
    for (auto q : m.accept_states) accept.push_back(m.states.at(q));
    j["accept_states"] = std::move(accept);
    j["deterministic"] = m.deterministic;
    j["blind"] = m.blind;
    j["initial_vector"] = detail::json_of(m.initial_vector);
    Json ts = Json::array();
    for (const auto& t : m.transitions) {
        Json tj;
        tj["from"] = m.states.at(t.from);
        tj["symbol"] = m.alphabet.at(t.symbol);
        tj["guard"] = to_string(t.guard);
        tj["to"] = m.states.at(t.to);
        tj["matrix"] = detail::json_of(t.matrix);
        ts.push_back(std::move(tj));
    }
    j["transitions"] = std::move(ts);
    return j;
}

inline std::string to_json_string(const Hva& m) { return to_json(m).dump(2) + "\n"; }

}  // namespace hva

#endif  // HVA_FORMAT_HPP

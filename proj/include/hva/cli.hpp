#ifndef HVA_CLI_HPP
#define HVA_CLI_HPP

#include <cstddef>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hva/analysis.hpp"
#include "hva/counter.hpp"
#include "hva/error.hpp"
#include "hva/format.hpp"
#include "hva/gallery.hpp"
#include "hva/machine.hpp"
#include "hva/sb_codec.hpp"

namespace hva::cli {

enum ExitCode : int {
    kOk = 0,
    kRejected = 1,  // rejection, disagreement, undetermined, bound violation
    kBadInput = 2,  // unreadable/invalid file, invalid encoding
    kResource = 3,  // configuration or step budget exceeded
    kUsage = 64,
};

/// Resolves "gallery:NAME" from the built-in registry, anything else as a
/// machine-definition file path. Besides the gallery entries the registry
/// knows sb_encoder, gsb_encoder_K and upow_as_printed.
inline Hva load_machine(const std::string& ref) {
    const std::string prefix = "gallery:";
    if (ref.rfind(prefix, 0) != 0) return load_hva(ref);
    const std::string name = ref.substr(prefix.size());
    if (auto e = gallery_find(name)) return e->machine;
    if (name == "sb_encoder") return sb_encoder_machine();
    if (name == "upow_as_printed") return upow_as_printed();
    if (name.rfind("gsb_encoder_", 0) == 0) {
        const std::string digits = name.substr(12);
        if (!digits.empty() && digits.size() <= 3 && digits.find_first_not_of("0123456789") == std::string::npos) {
            return gsb_encoder_machine(std::stoul(digits));
        }
    }
    throw InvalidArgument("no built-in machine named '" + name + "'");
}

inline Word parse_input(const std::string& text, const std::string& mode) {
    return mode == "csv" ? split_csv(text) : chars(text);
}

/// Symbols for the codec commands. chars mode: k = 2 reads Stern-Brocot bits,
/// k >= 3 reads digits 1..k. csv mode: "a_j" or "j" tokens.
inline GsbWord parse_gsb_word(const std::string& text, std::size_t k, const std::string& mode) {
    GsbWord w;
    auto index_of = [&](const std::string& tok) -> std::size_t {
        std::string digits = tok.rfind("a_", 0) == 0 ? tok.substr(2) : tok;
        if (digits.empty() || digits.size() > 6 || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw InvalidArgument("'" + tok + "' is not a symbol a_1..a_" + std::to_string(k));
        }
        const std::size_t j = std::stoul(digits);
        if (j < 1 || j > k) throw InvalidArgument("'" + tok + "' is not a symbol a_1..a_" + std::to_string(k));
        return j;
    };
    if (mode == "csv") {
        for (const auto& tok : split_csv(text)) w.push_back(index_of(tok));
        return w;
    }
    for (char c : text) {
        if (k == 2) {
            if (c != '0' && c != '1') throw InvalidArgument(std::string("'") + c + "' is not a binary digit");
            w.push_back(c == '1' ? 1 : 2);
        } else {
            w.push_back(index_of(std::string(1, c)));
        }
    }
    return w;
}

inline std::string format_gsb_word(const GsbWord& w, std::size_t k, const std::string& mode) {
    std::string out;
    if (mode == "csv" || k > 9) {
        for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + gsb_symbol(w[i]);
        return out;
    }
    for (auto j : w) out += k == 2 ? (j == 1 ? '1' : '0') : static_cast<char>('0' + j);
    return out;
}

inline Vector parse_vector_text(const std::string& text) {
    std::istringstream in(text);
    std::vector<Rational> entries;
    std::string tok;
    while (in >> tok) entries.push_back(Rational::parse(tok));
    if (entries.empty()) throw InvalidArgument("empty vector");
    return Vector(std::move(entries));
}

inline void print_report(std::ostream& out, const CheckReport& r, const char* left, const char* right) {
    if (r.passed()) {
        out << "pass: " << r.strings_checked << " strings checked, " << r.accepted << " accepted\n";
        return;
    }
    const auto& d = *r.disagreement;
    out << "disagreement: '" << format_word(d.word) << "' " << left << "=" << (d.left ? "accept" : "reject") << " "
        << right << "=" << (d.right ? "accept" : "reject") << "\n";
}

/// Runs the command line; all output goes to `out`, diagnostics to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Homing vector automata toolkit", "hva"};
    app.require_subcommand(1);

    std::string ref, ref2, input, symbols = "chars", oracle, name;
    std::size_t maxlen = 0, jobs = 1, max_configs = RunLimits{}.max_configs, k = 2, budget = 0;
    std::size_t bs = 1, bm = 1, bk = 1, bn = 0;
    auto symbols_opt = [&](CLI::App* sub) {
        sub->add_option("--symbols", symbols, "input symbol syntax")->check(CLI::IsMember({"chars", "csv"}));
    };
    auto limits_opt = [&](CLI::App* sub) {
        sub->add_option("--max-configs", max_configs, "configuration-set budget")->check(CLI::PositiveNumber);
    };
    auto jobs_opt = [&](CLI::App* sub) {
        sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    };

    auto* c_run = app.add_subcommand("run", "run a machine on one input");
    c_run->add_option("machine", ref, "file path or gallery:NAME")->required();
    c_run->add_option("input", input, "input string")->required();
    symbols_opt(c_run);
    limits_opt(c_run);

    auto* c_trace = app.add_subcommand("trace", "print the configuration set after each prefix");
    c_trace->add_option("machine", ref)->required();
    c_trace->add_option("input", input)->required();
    symbols_opt(c_trace);
    limits_opt(c_trace);

    auto* c_enum = app.add_subcommand("enum", "list accepted strings up to a length");
    c_enum->add_option("machine", ref)->required();
    c_enum->add_option("--maxlen", maxlen)->required();
    jobs_opt(c_enum);
    limits_opt(c_enum);

    auto* c_verify = app.add_subcommand("verify", "compare a machine with a gallery reference predicate");
    c_verify->add_option("machine", ref)->required();
    c_verify->add_option("--oracle", oracle, "gallery entry whose predicate is used")->required();
    c_verify->add_option("--maxlen", maxlen)->required();
    jobs_opt(c_verify);
    limits_opt(c_verify);

    auto* c_equiv = app.add_subcommand("equiv", "compare two machines");
    c_equiv->add_option("first", ref)->required();
    c_equiv->add_option("second", ref2)->required();
    c_equiv->add_option("--maxlen", maxlen)->required();
    jobs_opt(c_equiv);
    limits_opt(c_equiv);

    auto* c_encode = app.add_subcommand("encode", "generalized Stern-Brocot encoding");
    c_encode->add_option("--k", k, "alphabet size")->required();
    c_encode->add_option("string", input, "string to encode")->required();
    symbols_opt(c_encode);

    auto* c_decode = app.add_subcommand("decode", "generalized Stern-Brocot decoding");
    c_decode->add_option("--k", k, "alphabet size")->required();
    c_decode->add_option("vector", input, "space-separated entries")->required();
    symbols_opt(c_decode);

    auto* c_compile = app.add_subcommand("compile-counter", "compile a counter machine into a homing vector automaton");
    c_compile->add_option("file", ref)->required();

    auto* c_gallery = app.add_subcommand("gallery", "built-in machines");
    c_gallery->require_subcommand(1);
    auto* g_list = c_gallery->add_subcommand("list", "list gallery entries");
    auto* g_export = c_gallery->add_subcommand("export", "print a gallery machine definition");
    g_export->add_option("name", name)->required();
    auto* g_verify = c_gallery->add_subcommand("verify", "exhaustive machine-vs-reference check");
    g_verify->add_option("name", name)->required();
    g_verify->add_option("--maxlen", maxlen)->required();
    jobs_opt(g_verify);
    limits_opt(g_verify);

    auto* c_bound = app.add_subcommand("bound", "entry and configuration-count bounds");
    c_bound->add_option("--s", bs, "states")->check(CLI::PositiveNumber);
    c_bound->add_option("--m", bm, "matrix entry bound")->required()->check(CLI::PositiveNumber);
    c_bound->add_option("--k", bk, "dimension")->required()->check(CLI::PositiveNumber);
    c_bound->add_option("--n", bn, "steps")->required();

    auto* c_audit = app.add_subcommand("audit", "check observed entry growth against the entry bound");
    c_audit->add_option("machine", ref)->required();
    c_audit->add_option("--maxlen", maxlen)->required();
    jobs_opt(c_audit);
    limits_opt(c_audit);

    auto* c_dfa = app.add_subcommand("unary-dfa", "extract a DFA from a deterministic unary machine");
    c_dfa->add_option("machine", ref)->required();
    c_dfa->add_option("--budget", budget)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: usage: " << e.what() << "\n";
        return kUsage;
    }

    auto options = [&] {
        EnumOptions o;
        o.jobs = jobs;
        o.limits.max_configs = max_configs;
        return o;
    };

    try {
        if (c_run->parsed()) {
            const Hva m = load_machine(ref);
            RunLimits limits;
            limits.max_configs = max_configs;
            const bool ok = hva::run(m, parse_input(input, symbols), limits).accepted;
            out << (ok ? "accept" : "reject") << "\n";
            return ok ? kOk : kRejected;
        }
        if (c_trace->parsed()) {
            const Hva m = load_machine(ref);
            RunLimits limits;
            limits.max_configs = max_configs;
            const auto steps = trace(m, parse_input(input, symbols), limits);
            for (std::size_t i = 0; i < steps.size(); ++i) {
                if (steps[i].empty()) out << i << " (none)\n";
                for (const auto& c : steps[i]) out << i << " " << m.states[c.state] << " " << c.vector.str() << "\n";
            }
            return kOk;
        }
        if (c_enum->parsed()) {
            for (const auto& w : enumerate_language(load_machine(ref), maxlen, options())) out << format_word(w) << "\n";
            return kOk;
        }
        if (c_verify->parsed()) {
            auto entry = gallery_find(oracle);
            if (!entry) throw InvalidArgument("no gallery reference named '" + oracle + "'");
            const auto r = cross_check(load_machine(ref), entry->reference, maxlen, options());
            print_report(out, r, "machine", "reference");
            return r.passed() ? kOk : kRejected;
        }
        if (c_equiv->parsed()) {
            const auto r = equivalence(load_machine(ref), load_machine(ref2), maxlen, options());
            print_report(out, r, "first", "second");
            return r.passed() ? kOk : kRejected;
        }
        if (c_encode->parsed()) {
            out << gsb_encode(parse_gsb_word(input, k, symbols), k).str() << "\n";
            return kOk;
        }
        if (c_decode->parsed()) {
            out << format_gsb_word(gsb_decode(parse_vector_text(input), k), k, symbols) << "\n";
            return kOk;
        }
        if (c_compile->parsed()) {
            const CounterMachine cm = load_counter(ref);
            out << to_json_string(cm.blind ? compile_blind(cm) : compile_one_counter(cm));
            return kOk;
        }
        if (g_list->parsed()) {
            for (const auto& e : gallery_all()) {
                const auto& m = e.machine;
                out << e.name << "\t" << (m.deterministic ? "D" : "N") << (m.blind ? "B" : "") << "HVA(" << m.dimension
                    << ")\t" << e.notes << "\n";
            }
            return kOk;
        }
        if (g_export->parsed()) {
            auto e = gallery_find(name);
            if (!e) throw InvalidArgument("no gallery entry named '" + name + "'");
            out << to_json_string(e->machine);
            return kOk;
        }
        if (g_verify->parsed()) {
            auto e = gallery_find(name);
            if (!e) throw InvalidArgument("no gallery entry named '" + name + "'");
            const auto r = cross_check(e->machine, e->reference, maxlen, options());
            print_report(out, r, "machine", "reference");
            return r.passed() ? kOk : kRejected;
        }
        if (c_bound->parsed()) {
            out << "entry_bound " << entry_bound(bm, bk, bn).str() << "\n";
            out << "config_bound " << config_count_bound(bs, bm, bk, bn).str() << "\n";
            return kOk;
        }
        if (c_audit->parsed()) {
            const auto rep = growth_audit(load_machine(ref), maxlen, options());
            out << "m " << rep.m << " k " << rep.k << " s " << rep.s << " premise "
                << (rep.premise_holds ? "holds" : "fails") << "\n";
            for (const auto& l : rep.lengths) {
                out << l.n << " " << l.observed.str() << " " << l.bound.str() << "\n";
            }
            out << "pass: no entry exceeds its bound\n";
            return kOk;
        }
        if (c_dfa->parsed()) {
            const auto x = unary_dfa_extract(load_machine(ref), budget);
            if (!x.dfa) {
                out << "undetermined: " << x.reason << "\n";
                return kRejected;
            }
            out << x.dfa->str();
            return kOk;
        }
    } catch (const ResourceExceeded& e) {
        err << "error: " << e.code() << ": " << e.what() << "\n";
        return kResource;
    } catch (const InternalError& e) {
        err << "error: " << e.code() << ": " << e.what() << "\n";
        return kRejected;
    } catch (const Error& e) {
        err << "error: " << e.code() << ": " << e.what() << "\n";
        return kBadInput;
    }
    err << "error: usage: no command given\n";
    return kUsage;
}

}  // namespace hva::cli

#endif  // HVA_CLI_HPP

#include <gtest/gtest.h>

#include <random>

#include "hva/analysis.hpp"
#include "hva/format.hpp"
#include "hva/gallery.hpp"
#include "hva/machine.hpp"
#include "hva/sb_codec.hpp"
#include "oracles.hpp"

using namespace hva;

namespace {

Hva small_blind(bool with_eq_guard) {
    HvaBuilder b("small", {"a", "b"}, Vector{1});
    b.deterministic(true).blind(true).state("p", true).state("r");
    b.on("p", "a", "r", Matrix{{2}});
    b.on("r", "b", with_eq_guard ? Guard::Eq : Guard::Any, "p", Matrix{{rat(1, 2)}});
    return b.build();
}

/// Random NHVA(2) over {a, b} with entries in {-1, 0, 1} and mixed guards.
Hva random_nhva(std::mt19937& rng) {
    std::uniform_int_distribution<int> entry(-1, 1), guard(0, 2), state(0, 2), count(0, 1);
    HvaBuilder b("random", {"a", "b"}, Vector{1, 0});
    b.deterministic(false).blind(false).state("s0", true).state("s1").state("s2", true);
    const char* names[] = {"s0", "s1", "s2"};
    for (const char* from : names) {
        for (const char* sym : {"a", "b"}) {
            const int n = count(rng) + 1;
            for (int i = 0; i < n; ++i) {
                Matrix m{{entry(rng), entry(rng)}, {entry(rng), entry(rng)}};
                b.on(from, sym, static_cast<Guard>(guard(rng)), names[state(rng)], m);
            }
        }
    }
    return b.build();
}

/// Acceptance of a blind machine as a pure function of path products:
/// some state path ending in Q_a with v * (product of its matrices) = v.
bool accepts_by_path_products(const Hva& m, const Word& w) {
    std::vector<std::size_t> idx;
    for (const auto& s : w) idx.push_back(*m.symbol_index(s));
    auto go = [&](auto&& self, std::size_t pos, std::size_t q, const Matrix& product) -> bool {
        if (pos == idx.size()) return m.is_accepting(q) && vec_mat_mul(m.initial_vector, product) == m.initial_vector;
        for (const auto& t : m.transitions) {
            if (t.from == q && t.symbol == idx[pos] && self(self, pos + 1, t.to, mat_mul(product, t.matrix))) {
                return true;
            }
        }
        return false;
    };
    return go(go, 0, m.initial_state, Matrix::identity(m.dimension));
}

}  // namespace

TEST(Validate, BlindMachineWithEqGuard) {
    EXPECT_TRUE(validate(small_blind(false)).empty());
    const auto v = validate(small_blind(true));
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("transition 2"), std::string::npos);
    EXPECT_NE(v[0].find("blind"), std::string::npos);
}

TEST(Validate, DeterminismViolation) {
    Hva m = HvaBuilder("nd", {"a"}, Vector{1})
                .deterministic(true)
                .state("q", true)
                .on("q", "a", "q", Matrix{{1}})
                .on("q", "a", "q", Matrix{{2}})
                .build();
    const auto v = validate(m);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("nondeterminism on (q, a)"), std::string::npos);

    // EQ + NEQ partition the observation: deterministic.
    Hva ok = HvaBuilder("eqneq", {"a"}, Vector{1})
                 .deterministic(true)
                 .state("q", true)
                 .on("q", "a", Guard::Eq, "q", Matrix{{1}})
                 .on("q", "a", Guard::Neq, "q", Matrix{{2}})
                 .build();
    EXPECT_TRUE(validate(ok).empty());

    // ANY plus EQ is not.
    Hva bad = HvaBuilder("anyeq", {"a"}, Vector{1})
                  .deterministic(true)
                  .state("q", true)
                  .on("q", "a", Guard::Any, "q", Matrix{{1}})
                  .on("q", "a", Guard::Eq, "q", Matrix{{2}})
                  .build();
    EXPECT_EQ(validate(bad).size(), 1u);
}

TEST(Validate, StructuralViolations) {
    Hva m = small_blind(false);
    m.transitions[0].matrix = Matrix::identity(2);
    m.accept_states.push_back(9);
    m.initial_vector = Vector{1, 1};
    const auto v = validate(m);
    EXPECT_EQ(v.size(), 3u);
    EXPECT_THROW(Simulator{m}, InvalidArgument);
}

TEST(Validate, GalleryMachinesAreValid) {
    for (const auto& e : gallery_all()) {
        EXPECT_TRUE(validate(e.machine).empty()) << e.name;
        EXPECT_EQ(e.machine.alphabet, e.alphabet) << e.name;
    }
}

TEST(Step, AbaGuardRouting) {
    const Hva m = gallery_thm1_dim2().machine;
    const std::size_t bees = *m.state_index("bees");
    const auto at_home = step(m, Configuration{bees, Vector{1, 1}}, "a");
    ASSERT_EQ(at_home.size(), 1u);
    EXPECT_EQ(m.states[at_home.begin()->state], "hold");
    EXPECT_EQ(at_home.begin()->vector, (Vector{1, 1}));

    const auto away = step(m, Configuration{bees, Vector{3, 1}}, "a");
    ASSERT_EQ(away.size(), 1u);
    EXPECT_EQ(m.states[away.begin()->state], "count");
    EXPECT_EQ(away.begin()->vector, (Vector{2, 1}));

    const std::size_t hold = *m.state_index("hold");
    EXPECT_TRUE(step(m, Configuration{hold, Vector{1, 1}}, "b").empty());
    EXPECT_THROW(step(m, Configuration{hold, Vector{1, 1}}, "c"), InvalidArgument);
}

TEST(Run, Examples) {
    EXPECT_TRUE(run(gallery_thm1_dim2().machine, chars("aabbaa")).accepted);
    EXPECT_TRUE(run(gallery_upow().machine, chars("aaa")).accepted);
    EXPECT_FALSE(run(gallery_upow().machine, chars("aaaa")).accepted);
    EXPECT_THROW(run(gallery_upow().machine, chars("ab")), InvalidArgument);
}

TEST(Run, EmptyInputAcceptedIffInitialStateAccepts) {
    for (const auto& e : gallery_all()) {
        EXPECT_EQ(run(e.machine, {}).accepted, e.machine.is_accepting(e.machine.initial_state)) << e.name;
    }
}

TEST(Run, Statistics) {
    const auto r = run(gallery_upow().machine, chars("aaaaaa"));
    EXPECT_TRUE(r.accepted);
    EXPECT_EQ(r.stats.steps, 6u);
    EXPECT_GE(r.stats.max_configs, 2u);
    EXPECT_EQ(r.stats.max_entry, Rational(64));  // the never-switching branch
}

TEST(Run, BudgetExceeded) {
    RunLimits tight;
    tight.max_configs = 2;
    EXPECT_THROW(run(gallery_upow().machine, Word(10, "a"), tight), ResourceExceeded);
    RunLimits short_steps;
    short_steps.max_steps = 3;
    EXPECT_THROW(run(gallery_upow().machine, Word(4, "a"), short_steps), ResourceExceeded);
}

TEST(Trace, SternBrocotEncoder) {
    const auto t = trace(sb_encoder_machine(), chars("10"));
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[0].begin()->vector, (Vector{1, 1}));
    EXPECT_EQ(t[1].begin()->vector, (Vector{2, 1}));
    EXPECT_EQ(t[2].begin()->vector, (Vector{2, 3}));
}

TEST(Trace, EmptyInput) {
    const Hva m = gallery_thm1_dim2().machine;
    const auto t = trace(m, {});
    ASSERT_EQ(t.size(), 1u);
    ASSERT_EQ(t[0].size(), 1u);
    EXPECT_EQ(t[0].begin()->state, m.initial_state);
    EXPECT_EQ(t[0].begin()->vector, m.initial_vector);
}

TEST(Trace, SubsetSumResetOnHash) {
    // M_T1 on [0 0 1 1 1] gives [1 0 2 2 1]; M_# then gives [1 0 1 1 1].
    const auto t = trace(gallery_subsetsum_r().machine, chars("1#"));
    ASSERT_EQ(t.size(), 3u);
    ASSERT_EQ(t[1].size(), 1u);
    EXPECT_EQ(t[1].begin()->vector, (Vector{1, 0, 2, 2, 1}));
    ASSERT_EQ(t[2].size(), 1u);
    EXPECT_EQ(t[2].begin()->vector, (Vector{1, 0, 1, 1, 1}));
}

TEST(Properties, DeduplicationIsSound) {
    std::mt19937 rng(2024);
    std::vector<Hva> machines{gallery_thm1_dim2().machine, gallery_thm1_dim1().machine, gallery_pow().machine,
                              gallery_pow_r().machine};
    for (int i = 0; i < 4; ++i) machines.push_back(random_nhva(rng));
    RunLimits raw;
    raw.deduplicate = false;
    raw.max_configs = 1u << 20;
    for (const auto& m : machines) {
        for (const auto& w : oracle::all_words(m.alphabet, 10)) {
            ASSERT_EQ(run(m, w).accepted, run(m, w, raw).accepted) << m.name << " on " << format_word(w);
        }
    }
}

TEST(Properties, AgreesWithNaiveRecursion) {
    std::mt19937 rng(99);
    std::vector<Hva> machines;
    for (const auto& e : gallery_all()) machines.push_back(e.machine);
    for (int i = 0; i < 4; ++i) machines.push_back(random_nhva(rng));
    for (const auto& m : machines) {
        const std::size_t len = m.alphabet.size() > 3 ? 6 : 8;
        for (const auto& w : oracle::all_words(m.alphabet, len)) {
            ASSERT_EQ(run(m, w).accepted, oracle::naive_accepts(m, w)) << m.name << " on " << format_word(w);
        }
    }
}

TEST(Properties, BlindAcceptanceIsPathProduct) {
    for (const auto& e : gallery_all()) {
        if (!e.machine.blind) continue;
        const std::size_t len = e.alphabet.size() > 3 ? 5 : 7;
        for (const auto& w : oracle::all_words(e.alphabet, len)) {
            ASSERT_EQ(run(e.machine, w).accepted, accepts_by_path_products(e.machine, w)) << e.name << " "
                                                                                           << format_word(w);
        }
    }
}

TEST(Properties, DeterministicTracesHaveAtMostOneConfiguration) {
    for (const auto& e : gallery_all()) {
        if (!e.machine.deterministic) continue;
        for (const auto& w : oracle::all_words(e.alphabet, e.alphabet.size() > 3 ? 5 : 8)) {
            for (const auto& s : trace(e.machine, w)) ASSERT_LE(s.size(), 1u) << e.name;
        }
    }
}

TEST(Properties, PrefixConsistency) {
    const Hva m = gallery_subsetsum_r().machine;
    for (const auto& w : oracle::all_words(m.alphabet, 6)) {
        const auto base = trace(m, w);
        for (const auto& s : m.alphabet) {
            Word ext = w;
            ext.push_back(s);
            const auto longer = trace(m, ext);
            ASSERT_EQ(longer.size(), base.size() + 1);
            for (std::size_t i = 0; i < base.size(); ++i) ASSERT_EQ(longer[i], base[i]);
        }
    }
}

TEST(Format, RoundTripPreservesBehaviour) {
    for (const auto& e : gallery_all()) {
        const Hva back = hva_from_string(to_json_string(e.machine));
        EXPECT_EQ(to_json_string(back), to_json_string(e.machine)) << e.name;
        EXPECT_TRUE(equivalence(back, e.machine, e.alphabet.size() > 3 ? 6 : 8).passed()) << e.name;
    }
}

TEST(Format, ParsesDocument) {
    const std::string doc = R"({
      "name": "halves", "dimension": 1, "alphabet": ["a", "b"],
      "states": ["p", "r"], "initial_state": "p", "accept_states": ["p"],
      "deterministic": true, "blind": true, "initial_vector": ["1"],
      "transitions": [
        {"from": "p", "symbol": "a", "guard": "any", "to": "r", "matrix": [["2"]]},
        {"from": "r", "symbol": "b", "guard": "any", "to": "p", "matrix": [["1/2"]]}
      ]})";
    const Hva m = hva_from_string(doc);
    EXPECT_EQ(m.transitions[1].matrix.at(0, 0), rat(1, 2));
    EXPECT_TRUE(run(m, chars("abab")).accepted);
    EXPECT_FALSE(run(m, chars("a")).accepted);
}

TEST(Format, RejectsInvalidDocuments) {
    const std::string base = R"({
      "name": "x", "dimension": 1, "alphabet": ["a"], "states": ["p"], "initial_state": "p",
      "accept_states": ["p"], "deterministic": true, "blind": true, "initial_vector": ["1"],
      "transitions": [{"from": "p", "symbol": "a", "guard": "GUARD", "to": "p", "matrix": [["1"]]}]})";
    auto with_guard = [&](const std::string& g) {
        std::string s = base;
        s.replace(s.find("GUARD"), 5, g);
        return s;
    };
    EXPECT_NO_THROW(hva_from_string(with_guard("any")));
    EXPECT_THROW(hva_from_string(with_guard("eq")), InvalidArgument);  // blind violation
    EXPECT_THROW(hva_from_string(with_guard("maybe")), InvalidArgument);
    EXPECT_THROW(hva_from_string("{"), InvalidArgument);
    EXPECT_THROW(hva_from_string("{}"), InvalidArgument);
    EXPECT_THROW(load_hva("/nonexistent/machine.json"), InvalidArgument);
}

#include "regionlm/verify.hpp"

#include <cmath>
#include <functional>

#include "regionlm/algebra.hpp"
#include "regionlm/generator.hpp"
#include "regionlm/lm.hpp"
#include "regionlm/oracle.hpp"
#include "regionlm/rewrite.hpp"
#include "regionlm/text_util.hpp"

namespace regionlm::verify {

bool approx_equal(double a, double b, double rel_tol) {
    if (a == b) return true;
    return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

std::string compare_region_sets(const RegionSet& actual, const RegionSet& expected,
                                double rel_tol) {
    for (const Region& e : expected) {
        const Region* a = actual.find(e.start, e.end);
        if (a == nullptr) {
            return "missing region (" + std::to_string(e.start) + ", "
                 + std::to_string(e.end) + ")";
        }
        if (!approx_equal(a->score, e.score, rel_tol)) {
            return "score mismatch at (" + std::to_string(e.start) + ", "
                 + std::to_string(e.end) + "): got "
                 + format_double_shortest(a->score) + ", expected "
                 + format_double_shortest(e.score);
        }
    }
    for (const Region& a : actual) {
        if (expected.find(a.start, a.end) == nullptr) {
            return "unexpected region (" + std::to_string(a.start) + ", "
                 + std::to_string(a.end) + ")";
        }
    }
    return {};
}

std::string SuiteReport::render() const {
    std::string out;
    for (const auto& [section, count] : sections) {
        out += name + ": " + section + " " + std::to_string(count) + "/"
             + std::to_string(count) + " pass\n";
    }
    if (passed()) {
        out += "result: PASS (" + std::to_string(trials) + "/"
             + std::to_string(trials) + ")\n";
    } else {
        out += "result: FAIL (" + std::to_string(trials - failures) + "/"
             + std::to_string(trials) + ")\nfirst failure: " + first_failure
             + "\n";
    }
    return out;
}

namespace {

// Tracks the running totals and freezes the first failure's description.
struct Recorder {
    SuiteReport report;
    size_t section_passes = 0;

    void trial(bool ok, const std::function<std::string()>& describe) {
        ++report.trials;
        if (ok) {
            ++section_passes;
        } else {
            ++report.failures;
            if (report.first_failure.empty()) report.first_failure = describe();
        }
    }

    void close_section(const std::string& name) {
        report.sections.emplace_back(name, section_passes);
        section_passes = 0;
    }
};

}  // namespace

SuiteReport run_operator_oracle_suite(size_t trials_per_op, uint64_t seed) {
    constexpr double kTol = 1e-12;
    Recorder rec;
    rec.report.name = "ops";

    struct OpCase {
        const char* name;
        std::function<RegionSet(const RegionSet&, const RegionSet&, double)> engine;
        std::function<RegionSet(const RegionSet&, const RegionSet&, double)> naive;
    };
    const std::vector<OpCase> cases = {
        {"CONTAINING",
         [](const RegionSet& a, const RegionSet& b, double) {
             return containing(a, b);
         },
         [](const RegionSet& a, const RegionSet& b, double) {
             return oracle::naive_containing(a, b);
         }},
        {"CONTAINED_BY",
         [](const RegionSet& a, const RegionSet& b, double) {
             return contained_by(a, b);
         },
         [](const RegionSet& a, const RegionSet& b, double) {
             return oracle::naive_contained_by(a, b);
         }},
        {"SCALE",
         [](const RegionSet& a, const RegionSet&, double f) { return scale(f, a); },
         [](const RegionSet& a, const RegionSet&, double f) {
             return oracle::naive_scale(f, a);
         }},
        {"AND",
         [](const RegionSet& a, const RegionSet& b, double) { return and_(a, b); },
         [](const RegionSet& a, const RegionSet& b, double) {
             return oracle::naive_and(a, b);
         }},
        {"OR",
         [](const RegionSet& a, const RegionSet& b, double) { return or_(a, b); },
         [](const RegionSet& a, const RegionSet& b, double) {
             return oracle::naive_or(a, b);
         }},
    };

    for (const OpCase& op : cases) {
        Rng rng(seed);
        for (size_t t = 0; t < trials_per_op; ++t) {
            RegionSet a = generate_region_set(rng);
            RegionSet b = generate_region_set(rng);
            double factor = rng.positive(0.01, 5.0);
            RegionSet engine = op.engine(a, b, factor);
            RegionSet naive = op.naive(a, b, factor);
            std::string diff = compare_region_sets(engine, naive, kTol);
            rec.trial(diff.empty(), [&] {
                return std::string(op.name) + " trial " + std::to_string(t) + ": "
                     + diff;
            });
        }
        rec.close_section(op.name);
    }
    return rec.report;
}

SuiteReport run_algebraic_law_suite(size_t trials_per_law, uint64_t seed) {
    constexpr double kTol = 1e-12;
    Recorder rec;
    rec.report.name = "laws";

    struct LawCase {
        const char* name;
        std::function<std::pair<RegionSet, RegionSet>(
            const RegionSet&, const RegionSet&, const RegionSet&, double, double)>
            sides;
    };
    const std::vector<LawCase> laws = {
        {"AND commutativity",
         [](const RegionSet& a, const RegionSet& b, const RegionSet&, double,
            double) { return std::pair{and_(a, b), and_(b, a)}; }},
        {"OR commutativity",
         [](const RegionSet& a, const RegionSet& b, const RegionSet&, double,
            double) { return std::pair{or_(a, b), or_(b, a)}; }},
        {"AND associativity",
         [](const RegionSet& a, const RegionSet& b, const RegionSet& c, double,
            double) {
             return std::pair{and_(and_(a, b), c), and_(a, and_(b, c))};
         }},
        {"OR associativity",
         [](const RegionSet& a, const RegionSet& b, const RegionSet& c, double,
            double) {
             return std::pair{or_(or_(a, b), c), or_(a, or_(b, c))};
         }},
        {"AND over OR distributivity",
         [](const RegionSet& a, const RegionSet& b, const RegionSet& c, double,
            double) {
             return std::pair{and_(a, or_(b, c)), or_(and_(a, b), and_(a, c))};
         }},
        {"SCALE composition",
         [](const RegionSet& a, const RegionSet&, const RegionSet&, double f,
            double g) { return std::pair{scale(f, scale(g, a)), scale(f * g, a)}; }},
        {"SCALE over OR distribution",
         [](const RegionSet& a, const RegionSet& b, const RegionSet&, double f,
            double) {
             return std::pair{scale(f, or_(a, b)), or_(scale(f, a), scale(f, b))};
         }},
    };

    for (const LawCase& law : laws) {
        Rng rng(seed);
        for (size_t t = 0; t < trials_per_law; ++t) {
            RegionSet a = generate_region_set(rng);
            RegionSet b = generate_region_set(rng);
            RegionSet c = generate_region_set(rng);
            double f = rng.positive(0.01, 5.0);
            double g = rng.positive(0.01, 5.0);
            auto [lhs, rhs] = law.sides(a, b, c, f, g);
            std::string diff = compare_region_sets(lhs, rhs, kTol);
            rec.trial(diff.empty(), [&] {
                return std::string(law.name) + " trial " + std::to_string(t)
                     + ": " + diff;
            });
        }
        rec.close_section(law.name);
    }
    return rec.report;
}

// ---------------------------------------------------------------------------
// Ranking-correspondence trials

namespace {

struct FamilyCase {
    const char* name;
    CorpusProfile profile;
    std::function<LMSpec(Rng&, size_t trial)> make_spec;
};

LMSpec unigram_spec(Rng& rng, const CorpusProfile& profile) {
    LMSpec spec;
    spec.target = profile.chain.back();
    int terms = rng.range(1, 3);
    for (int i = 0; i < terms; ++i) {
        spec.terms.push_back(
            make_term_prob(rng.pick(profile.focus_words), spec.target));
    }
    return spec;
}

MixturePtr smoothing_term(const std::string& word, const std::string& target,
                          double lambda) {
    return make_weighted_sum({{1.0 - lambda, make_term_prob(word, "root")},
                              {lambda, make_term_prob(word, target)}});
}

std::vector<FamilyCase> lm_families() {
    CorpusProfile flat;
    flat.chain = {"doc"};
    flat.focus_words = {"db", "ir", "web", "google"};

    CorpusProfile video;
    video.chain = {"video", "scene", "shot"};
    video.focus_words = {"ni", "knight", "grail"};
    video.min_children = 1;
    video.max_children = 2;
    video.max_leaf_words = 4;

    CorpusProfile clir = flat;
    clir.focus_words = {"broken", "fractured", "heart", "ticker"};

    std::vector<FamilyCase> families;

    families.push_back({"unigram", flat, [flat](Rng& rng, size_t) {
                            return unigram_spec(rng, flat);
                        }});

    families.push_back(
        {"smoothing", flat, [flat](Rng& rng, size_t trial) {
             const double lambdas[] = {0.2, 0.5, 0.8};
             double lambda = lambdas[trial % 3];
             LMSpec spec;
             spec.target = "doc";
             int terms = rng.range(1, 2);
             for (int i = 0; i < terms; ++i) {
                 spec.terms.push_back(smoothing_term(rng.pick(flat.focus_words),
                                                     spec.target, lambda));
             }
             return spec;
         }});

    families.push_back(
        {"video", video, [video](Rng& rng, size_t trial) {
             double a = 0.18, b = 0.02, c = 0.4, d = 0.4;
             if (trial % 2 == 1) {
                 a = rng.positive(0.05, 1.0);
                 b = rng.positive(0.05, 1.0);
                 c = rng.positive(0.05, 1.0);
                 d = rng.positive(0.05, 1.0);
             }
             LMSpec spec;
             spec.target = "shot";
             const std::string& word = rng.pick(video.focus_words);
             spec.terms.push_back(
                 make_weighted_sum({{a, make_term_prob(word, "root")},
                                    {b, make_term_prob(word, "video")},
                                    {c, make_term_prob(word, "scene")},
                                    {d, make_term_prob(word, "shot")}}));
             return spec;
         }});

    families.push_back(
        {"prior", flat, [flat](Rng& rng, size_t) {
             LMSpec spec = unigram_spec(rng, flat);
             spec.prior = "PageRank";
             return spec;
         }});

    families.push_back(
        {"translation", clir, [clir](Rng& rng, size_t trial) {
             LMSpec spec;
             spec.target = "doc";
             if (trial % 2 == 0) {
                 spec.terms.push_back(make_weighted_sum(
                     {{1.0, make_term_prob("broken", "doc")},
                      {0.2, make_term_prob("fractured", "doc")}}));
                 spec.terms.push_back(make_weighted_sum(
                     {{0.5, make_term_prob("heart", "doc")},
                      {0.1, make_term_prob("ticker", "doc")}}));
             } else {
                 int terms = rng.range(1, 2);
                 for (int i = 0; i < terms; ++i) {
                     std::vector<std::pair<double, MixturePtr>> parts;
                     int alternatives = rng.range(1, 3);
                     for (int j = 0; j < alternatives; ++j) {
                         parts.emplace_back(
                             rng.positive(0.05, 1.0),
                             make_term_prob(rng.pick(clir.focus_words), "doc"));
                     }
                     spec.terms.push_back(make_weighted_sum(std::move(parts)));
                 }
             }
             return spec;
         }});

    return families;
}

// One correspondence trial: the compiled query must retrieve exactly the
// target regions the direct arithmetic scores positive, with equal scores.
std::string correspondence_diff(const LMSpec& spec, const CorpusIndex& index) {
    constexpr double kTol = 1e-9;
    RegionSet algebra = evaluate(compile_spec(spec), index);
    RegionSet targets = index.element_regions(spec.target);

    std::vector<Region> expected;
    for (const Region& target : targets) {
        double direct = direct_score(spec, index, target);
        if (direct > 0.0) expected.push_back({target.start, target.end, direct});
    }
    return compare_region_sets(algebra, RegionSet::canonical(std::move(expected)),
                               kTol);
}

}  // namespace

SuiteReport run_lm_correspondence_suite(size_t trials_per_family, uint64_t seed) {
    Recorder rec;
    rec.report.name = "lm";

    for (const FamilyCase& family : lm_families()) {
        Rng rng(seed);
        for (size_t t = 0; t < trials_per_family; ++t) {
            GeneratedCorpus corpus = generate_corpus(family.profile, rng);
            LMSpec spec = family.make_spec(rng, t);
            if (spec.prior) {
                corpus.index.register_stored_set(
                    *spec.prior,
                    generate_prior_set(corpus.index, spec.target, rng));
            }
            std::string diff = correspondence_diff(spec, corpus.index);
            rec.trial(diff.empty(), [&] {
                return std::string(family.name) + " trial " + std::to_string(t)
                     + ": " + diff + "\ncorpus: " + corpus.xml;
            });
        }
        rec.close_section(family.name);
    }
    return rec.report;
}

// ---------------------------------------------------------------------------
// Optimizer alternatives

namespace {

struct RewritePair {
    const char* name;
    const char* original;
    const char* alternative;
};

const std::vector<RewritePair>& rewrite_pairs() {
    static const std::vector<RewritePair> pairs = {
        {"conjunctive chain",
         "(<doc> CONTAINING db) AND (<doc> CONTAINING ir)",
         "(<doc> CONTAINING db) CONTAINING ir"},
        {"smoothing hoist",
         "(<doc> CONTAINED_BY ((0.2 SCALE (<root> CONTAINING db)) OR "
         "(0.8 SCALE (<doc> CONTAINING db)))) AND "
         "(<doc> CONTAINED_BY ((0.2 SCALE (<root> CONTAINING ir)) OR "
         "(0.8 SCALE (<doc> CONTAINING ir))))",
         "(<doc> CONTAINED_BY (((0.2 SCALE <root>) OR (0.8 SCALE <doc>)) "
         "CONTAINING db)) CONTAINED_BY (((0.2 SCALE <root>) OR "
         "(0.8 SCALE <doc>)) CONTAINING ir)"},
        {"video hoist",
         "<shot> CONTAINED_BY ((0.18 SCALE (<root> CONTAINING ni)) OR "
         "(0.02 SCALE (<video> CONTAINING ni)) OR "
         "(0.4 SCALE (<scene> CONTAINING ni)) OR "
         "(0.4 SCALE (<shot> CONTAINING ni)))",
         "<shot> CONTAINED_BY (((0.18 SCALE <root>) OR (0.02 SCALE <video>) OR "
         "(0.4 SCALE <scene>) OR (0.4 SCALE <shot>)) CONTAINING ni)"},
        {"prior fusion",
         "$PageRank AND (<doc> CONTAINING google)",
         "$PageRank CONTAINING google"},
        {"translation hoist",
         "((1.0 SCALE (<doc> CONTAINING broken)) OR "
         "(0.2 SCALE (<doc> CONTAINING fractured))) AND "
         "((0.5 SCALE (<doc> CONTAINING heart)) OR "
         "(0.1 SCALE (<doc> CONTAINING ticker)))",
         "(<doc> CONTAINING (broken OR (0.2 SCALE fractured))) CONTAINING "
         "((0.5 SCALE heart) OR (0.1 SCALE ticker))"},
    };
    return pairs;
}

}  // namespace

SuiteReport run_rewrite_pair_suite(size_t trials_per_pair, uint64_t seed) {
    Recorder rec;
    rec.report.name = "rewrites";

    size_t pair_index = 0;
    for (const RewritePair& pair : rewrite_pairs()) {
        ExprPtr original = parse_query(pair.original);
        ExprPtr alternative = parse_query(pair.alternative);
        EquivalenceVerdict verdict = check_equivalent(
            original, alternative, trials_per_pair, seed + pair_index);
        rec.report.trials += verdict.trials_run;
        if (verdict.equivalent) {
            rec.section_passes = verdict.trials_run;
        } else {
            rec.section_passes = verdict.trials_run - 1;
            ++rec.report.failures;
            if (rec.report.first_failure.empty()) {
                rec.report.first_failure =
                    std::string(pair.name) + ": "
                    + verdict.counterexample->describe();
            }
        }
        rec.close_section(pair.name);
        ++pair_index;
    }
    return rec.report;
}

SuiteReport run_index_roundtrip_suite(size_t corpora, uint64_t seed,
                                      const std::filesystem::path& scratch_dir) {
    Recorder rec;
    rec.report.name = "roundtrip";

    CorpusProfile flat;
    CorpusProfile video;
    video.chain = {"video", "scene", "shot"};
    video.max_children = 2;

    Rng rng(seed);
    for (size_t t = 0; t < corpora; ++t) {
        const CorpusProfile& profile = (t % 2 == 0) ? flat : video;
        GeneratedCorpus corpus = generate_corpus(profile, rng);
        corpus.index.register_stored_set(
            "PageRank", generate_prior_set(corpus.index, profile.chain.back(), rng));

        std::filesystem::path dir = scratch_dir / ("idx" + std::to_string(t));
        save_index(corpus.index, dir);
        CorpusIndex reloaded = load_index(dir);
        std::filesystem::remove_all(dir);

        bool ok = reloaded == corpus.index;
        rec.trial(ok, [&] {
            return "round-trip mismatch on trial " + std::to_string(t)
                 + "\ncorpus: " + corpus.xml;
        });
    }
    rec.close_section("save/load identity");
    return rec.report;
}

}  // namespace regionlm::verify

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "regionlm/corpus_index.hpp"
#include "regionlm/errors.hpp"
#include "regionlm/lm.hpp"
#include "regionlm/nexi.hpp"
#include "regionlm/query.hpp"
#include "regionlm/text_util.hpp"
#include "regionlm/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitInternalError = 2;

void print_ranked(const regionlm::RankedResult& ranked) {
    size_t position = 1;
    for (const regionlm::Region& r : ranked) {
        std::cout << position << '\t' << r.start << '\t' << r.end << '\t'
                  << regionlm::format_double_sig9(r.score) << '\n';
        ++position;
    }
}

struct IndexOptions {
    std::string corpus_path;
    std::string out_dir;
    std::vector<std::string> stored_specs;  // name=path.tsv
};

int cmd_index(const IndexOptions& opt) {
    regionlm::CorpusIndex index =
        regionlm::build_index_from_file(opt.corpus_path);
    for (const std::string& spec : opt.stored_specs) {
        size_t eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
            throw regionlm::ValidationError(
                "--stored expects name=path.tsv, got '" + spec + "'");
        }
        index.register_stored_set(
            spec.substr(0, eq),
            regionlm::load_stored_set_tsv(spec.substr(eq + 1)));
    }
    regionlm::save_index(index, opt.out_dir);
    std::cerr << "indexed " << index.word_count() << " words into " << opt.out_dir
              << "\n";
    return kExitOk;
}

struct QueryOptions {
    std::string index_dir;
    std::string query;
    size_t k = 10;
};

int cmd_query(const QueryOptions& opt) {
    regionlm::CorpusIndex index = regionlm::load_index(opt.index_dir);
    regionlm::ExprPtr expr = regionlm::parse_query(opt.query);
    print_ranked(regionlm::rank(regionlm::evaluate(expr, index), opt.k));
    return kExitOk;
}

struct CompileOptions {
    std::string spec_path;
    std::string evaluate_dir;  // empty: print only
    size_t k = 10;
};

int cmd_compile_lm(const CompileOptions& opt) {
    regionlm::LMSpec spec = regionlm::load_spec_file(opt.spec_path);
    regionlm::ExprPtr expr = regionlm::compile_spec(spec);
    std::cout << regionlm::to_query_string(expr) << '\n';
    if (!opt.evaluate_dir.empty()) {
        regionlm::CorpusIndex index = regionlm::load_index(opt.evaluate_dir);
        print_ranked(regionlm::rank(regionlm::evaluate(expr, index), opt.k));
    }
    return kExitOk;
}

int cmd_nexi(const std::string& query) {
    std::cout << regionlm::to_query_string(regionlm::translate_nexi(query))
              << '\n';
    return kExitOk;
}

struct VerifyOptions {
    std::string mode;
    size_t trials = 500;
    uint64_t seed = 7;
};

int cmd_verify(const VerifyOptions& opt) {
    regionlm::verify::SuiteReport report;
    if (opt.mode == "ops") {
        report = regionlm::verify::run_operator_oracle_suite(opt.trials, opt.seed);
    } else if (opt.mode == "lm") {
        report =
            regionlm::verify::run_lm_correspondence_suite(opt.trials, opt.seed);
    } else if (opt.mode == "rewrites") {
        report = regionlm::verify::run_rewrite_pair_suite(opt.trials, opt.seed);
    } else {
        throw regionlm::ValidationError("unknown verify mode '" + opt.mode
                                        + "': expected ops, lm or rewrites");
    }
    std::cout << report.render();
    return report.passed() ? kExitOk : kExitUserError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"structured-text retrieval with a scored region algebra"};
    app.require_subcommand(1);

    IndexOptions index_opt;
    CLI::App* index_cmd =
        app.add_subcommand("index", "build a positional index from an XML corpus");
    index_cmd->add_option("corpus", index_opt.corpus_path, "corpus XML file")
        ->required();
    index_cmd->add_option("-o,--out", index_opt.out_dir, "output index directory")
        ->required();
    index_cmd->add_option("--stored", index_opt.stored_specs,
                          "register a stored region set, name=path.tsv");

    QueryOptions query_opt;
    CLI::App* query_cmd =
        app.add_subcommand("query", "evaluate a region query against an index");
    query_cmd->add_option("index", query_opt.index_dir, "index directory")
        ->required();
    query_cmd->add_option("-q,--query", query_opt.query, "query text")->required();
    query_cmd->add_option("-k", query_opt.k, "number of results");

    CompileOptions compile_opt;
    CLI::App* compile_cmd = app.add_subcommand(
        "compile-lm", "compile a ranking specification into a region query");
    compile_cmd->add_option("spec", compile_opt.spec_path, "spec JSON file")
        ->required();
    compile_cmd->add_option("--evaluate", compile_opt.evaluate_dir,
                            "also run the compiled query against this index");
    compile_cmd->add_option("-k", compile_opt.k, "number of results");

    std::string nexi_query;
    CLI::App* nexi_cmd =
        app.add_subcommand("nexi", "translate a NEXI query into a region query");
    nexi_cmd->add_option("-q,--query", nexi_query, "NEXI query")->required();

    VerifyOptions verify_opt;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "run randomized verification suites (ops | lm | rewrites)");
    verify_cmd->add_option("mode", verify_opt.mode, "ops, lm or rewrites")
        ->required();
    verify_cmd->add_option("--trials", verify_opt.trials, "trials per case");
    verify_cmd->add_option("--seed", verify_opt.seed, "random seed");

    try {
        app.parse(argc, argv);
        if (index_cmd->parsed()) return cmd_index(index_opt);
        if (query_cmd->parsed()) return cmd_query(query_opt);
        if (compile_cmd->parsed()) return cmd_compile_lm(compile_opt);
        if (nexi_cmd->parsed()) return cmd_nexi(nexi_query);
        if (verify_cmd->parsed()) return cmd_verify(verify_opt);
        return kExitUserError;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUserError;
    } catch (const regionlm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUserError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
}

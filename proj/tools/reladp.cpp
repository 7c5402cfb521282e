#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "reladp/reladp.hpp"

namespace {

int exit_code(reladp::Answer a) {
    switch (a) {
        case reladp::Answer::Yes: return 0;
        case reladp::Answer::No: return 1;
        case reladp::Answer::Maybe: return 2;
    }
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relative termination prover"};
    app.require_subcommand(1);

    reladp::ProverConfig cfg;
    if (const char* s = std::getenv("RELADP_SEED")) cfg.seed = std::strtoull(s, nullptr, 10);

    std::string file, proof_format = "text", dot_file;
    bool no_loop = false;
    auto* prove = app.add_subcommand("prove", "decide relative termination of a .trs file");
    prove->add_option("FILE", file, "input system")->required();
    prove->add_option("--timeout", cfg.timeout_seconds, "seconds")->check(CLI::PositiveNumber);
    prove->add_option("--max-coeff", cfg.max_coeff, "largest interpretation coefficient")->check(CLI::PositiveNumber);
    prove->add_option("--loop-depth", cfg.loop_depth, "loop search depth")->check(CLI::PositiveNumber);
    prove->add_option("--proof", proof_format, "proof format")->check(CLI::IsMember({"text", "json"}));
    prove->add_option("--dot", dot_file, "write dependency graphs in DOT format");
    prove->add_flag("--no-loop-search", no_loop, "skip the non-termination search");

    std::string dir, csv_file;
    auto* bench = app.add_subcommand("bench", "run the prover on every .trs file in a directory");
    bench->add_option("DIR", dir, "directory")->required();
    bench->add_option("--csv", csv_file, "write results as CSV");
    bench->add_option("--timeout", cfg.timeout_seconds, "seconds per file")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    }

    try {
        if (*prove) {
            cfg.loop_search = !no_loop;
            cfg.format = proof_format == "json" ? reladp::ProofFormat::Json : reladp::ProofFormat::Text;
            auto res = reladp::prove(reladp::load_relative_trs(file), cfg);
            std::cout << reladp::to_string(res.answer) << "\n" << reladp::render_proof(res.proof, cfg.format);
            if (!dot_file.empty()) {
                std::ofstream out(dot_file);
                if (!out) throw reladp::Error("cannot write " + dot_file);
                out << reladp::render_proof(res.proof, reladp::ProofFormat::Dot);
            }
            return exit_code(res.answer);
        }
        auto report = reladp::run_benchmark(dir, cfg);
        reladp::print_table(std::cout, report);
        if (!csv_file.empty()) {
            std::ofstream out(csv_file);
            if (!out) throw reladp::Error("cannot write " + csv_file);
            reladp::write_csv(out, report);
        }
        return report.errors ? 3 : 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

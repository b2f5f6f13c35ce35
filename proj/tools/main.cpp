#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "hyperrig/errors.hpp"
#include "hyperrig/io.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw hyperrig::ValidationError("cannot open input file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperrigidity analyzer for correspondences over multi-matrix algebras and "
                 "for discrete multigraphs"};
    app.require_subcommand(1);

    std::string file;
    std::string out_path;
    hyperrig::io::AnalyzeOptions opts;

    CLI::App* analyze = app.add_subcommand("analyze", "analyze one input document");
    analyze->add_option("file", file, "input document")->required();
    analyze->add_option("--tol", opts.tol, "tolerance for every comparison (default 1e-10)");
    analyze->add_flag("--certify", opts.certify, "also run the numeric certificate");
    analyze->add_flag("--frame", opts.frame, "also compute frame residuals for the module");
    analyze->add_option("--depth", opts.depth, "Fock truncation depth (default 2)");
    analyze->add_option("--shift", opts.shift, "shift-space dimension (default 4)");
    analyze->add_option("--truncate", opts.truncate,
                        "replace infinite edge multiplicities by this cap for numeric blocks");
    analyze->add_option("--out", out_path, "write the report here instead of stdout");

    int corpus_cases = 200;
    CLI::App* selftest = app.add_subcommand("selftest", "run the built-in corpus checks");
    selftest->add_option("--cases", corpus_cases, "number of corpus correspondences (default 200)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            const std::string text = read_file(file);
            const hyperrig::io::InputDocument doc = hyperrig::io::parse_document(text);
            const hyperrig::io::Report report = hyperrig::io::run_analyze(doc, opts);
            const std::string serialized = hyperrig::io::serialize_report(report);
            if (out_path.empty()) {
                std::cout << serialized;
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw hyperrig::ValidationError("cannot open output file '" + out_path + "'");
                out << serialized;
            }
            return 0;
        }
        if (selftest->parsed()) return hyperrig::io::run_selftest(std::cout, corpus_cases);
    } catch (const hyperrig::ParseError& e) {
        std::cerr << "parse error at line " << e.line() << ", column " << e.column() << ": "
                  << e.what() << "\n";
        return 1;
    } catch (const hyperrig::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const hyperrig::InternalError& e) {
        std::cerr << "internal cross-check failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

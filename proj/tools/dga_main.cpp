#include <fstream>
#include <iostream>
#include <sstream>

#include "dga/runner.hpp"

namespace {

constexpr const char* kUsage = R"(dga - exact homological computations for cochain DG algebras

usage:
  dga <command> [args...] [-f <document.dg | ->]

commands requiring a document (-f; '-' reads standard input):
  validate                      check all axioms, list violations
  cohomology <mod>              H with chosen representatives
  betti <mod>                   Betti numbers on the window (tower)
  bass <mod>                    Bass numbers on the window (dual bar)
  pcd <mod>                     projective codimension with certainty
  amp <mod>                     inf/sup/amp with certainty
  tensor <P> <M>                H(P (x)L M) on the sound window
  series <P> <M>                the series f_M(t) against P
  tower <mod> --up-to <u>       the cycle-killing tower
  tasks                         run the document's [tasks] list

standalone commands:
  verify <id> [--seed s] [--count n]
        ids: inf-add sup amp ab betti-gap bass-gap gap-converse
             series-tower series-compact series-degree
        (with -f, the document's modules join the instance list)
  atlas sphere <n> | wedge <d...> | trunc <n> <e> | random <base...> --seed <s>
        [--field rational|p<p>] [--window <lo> <hi>]
        prints a document for the requested instance

module expressions: NAME | R | k | dual(e) | shift(e,s) | sum(e,e)

exit codes: 0 computed/verified, 1 counterexample, 2 window-limited, 3 input error
)";

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args;
    std::string doc_path;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "-f" || a == "--doc") {
            if (++i >= argc) {
                std::cerr << "missing path after " << a << "\n";
                return 3;
            }
            doc_path = argv[i];
        } else if (a == "-h" || a == "--help") {
            std::cout << kUsage;
            return 0;
        } else {
            args.push_back(a);
        }
    }
    if (args.empty()) {
        std::cerr << kUsage;
        return 3;
    }

    std::optional<dga::Document> doc;
    if (!doc_path.empty()) {
        std::string text;
        if (doc_path == "-") {
            std::ostringstream ss;
            ss << std::cin.rdbuf();
            text = ss.str();
        } else {
            std::ifstream in(doc_path);
            if (!in) {
                std::cerr << "cannot open " << doc_path << "\n";
                return 3;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        try {
            doc = dga::parse_document(text);
        } catch (const dga::ParseError& e) {
            std::cerr << doc_path << ": " << e.what() << "\n";
            return 3;
        }
    }

    auto result = dga::run_command(doc, args);
    std::cout << result.machine;
    return result.exit_code;
}

#pragma once

#include <optional>

#include "dga/document.hpp"

namespace dga {

/* Batch command execution: shared by the CLI tool and the tests.
 *
 * Exit codes: 0 = computed/verified, 1 = counterexample found,
 * 2 = inconclusive (window-limited), 3 = input error. */
struct RunResult {
    std::string human;    // free-form text
    std::string machine;  // the stable machine-readable block, golden-tested
    int exit_code = 0;
};

RunResult run_command(const std::optional<Document>& doc, const std::vector<std::string>& args);

/* Expression grammar for module arguments:
 *   expr := NAME | R | k | dual(expr) | shift(expr, s) | sum(expr, expr)   */

}  // namespace dga

#pragma once

#include <string>
#include <vector>

namespace dga {

/* Outcome of one verification: a theorem instance, a termwise inequality, a
 * degree identity.  `Inconclusive` means the window did not certify enough
 * data to assert anything; it is never a refutation. */
struct CheckReport {
    enum class Status { Verified, Counterexample, Inconclusive };

    std::string id;
    Status status = Status::Inconclusive;
    std::vector<std::string> inputs;  // human-readable description of the instance
    std::vector<std::string> trace;   // each side of each (in)equality, exact values
    std::string replay;               // serialized document reproducing the instance

    bool verified() const { return status == Status::Verified; }

    std::string status_name() const {
        switch (status) {
            case Status::Verified: return "verified";
            case Status::Counterexample: return "counterexample";
            case Status::Inconclusive: return "inconclusive-window";
        }
        return "?";
    }
};

}  // namespace dga

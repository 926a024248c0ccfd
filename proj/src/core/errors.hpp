#pragma once

#include <stdexcept>
#include <string>

namespace cnb {

// Invalid or inconsistent user input (bad config, wrong signature, frame violation).
struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

// Evaluation outside a function's mathematical domain (arccsn range, sn(x)=0, ...).
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// Coincident or antipodal bodies: the force law is singular there.
struct SingularPair : std::runtime_error {
    int i = -1, j = -1;
    SingularPair(const std::string& msg, int i_, int j_)
        : std::runtime_error(msg), i(i_), j(j_) {}
};

} // namespace cnb

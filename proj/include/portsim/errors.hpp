#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace portsim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ValidationIssue {
    std::string field;
    std::string message;
};

// Raised when a scenario, plan or argument fails validation. Carries every
// issue found, not just the first.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues);
    ValidationError(std::string field, std::string message);

    const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ValidationIssue> issues_;
};

// Raised when a run reaches an impossible state (agent-logic bug).
class SimulationError : public Error {
public:
    using Error::Error;
};

} // namespace portsim

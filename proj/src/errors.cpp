#include "portsim/errors.hpp"

namespace portsim {

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues)
{
    std::string out;
    for (const auto& issue : issues) {
        if (!out.empty()) {
            out += "; ";
        }
        out += issue.field.empty() ? issue.message : issue.field + ": " + issue.message;
    }
    return out;
}

} // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error(join_issues(issues))
    , issues_(std::move(issues))
{
}

ValidationError::ValidationError(std::string field, std::string message)
    : ValidationError(std::vector<ValidationIssue>{{std::move(field), std::move(message)}})
{
}

} // namespace portsim

#ifndef CONTMEAN_ERRORS_HPP
#define CONTMEAN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace contmean {

// Error categories surfaced by the library. CLI maps all of these to exit
// code 2; anything else escaping to main is an internal error (exit 1).
enum class ErrorKind {
    parse_error,
    validation_error,
    metric_edge_violation,
    invalid_parameter,
    empty_edge_set,
    not_a_tree,
    not_a_cactus,
    not_uniform,
    cap_exceeded,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::parse_error: return "ParseError";
        case ErrorKind::validation_error: return "ValidationError";
        case ErrorKind::metric_edge_violation: return "MetricEdgeViolation";
        case ErrorKind::invalid_parameter: return "InvalidParameter";
        case ErrorKind::empty_edge_set: return "EmptyEdgeSet";
        case ErrorKind::not_a_tree: return "NotATree";
        case ErrorKind::not_a_cactus: return "NotACactus";
        case ErrorKind::not_uniform: return "NotUniform";
        case ErrorKind::cap_exceeded: return "CapExceeded";
    }
    return "Error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace contmean

#endif

#ifndef GREENREC_ERRORS_HPP
#define GREENREC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace greenrec {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg, int line = -1)
        : std::runtime_error(line >= 0 ? "parse error (line " + std::to_string(line) + "): " + msg
                                       : "parse error: " + msg),
          line_number(line) {}
    int line_number;
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error("domain error: " + msg) {}
};

struct DivisionError : std::runtime_error {
    explicit DivisionError(const std::string& msg) : std::runtime_error("division error: " + msg) {}
};

struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& msg) : std::runtime_error("capability error: " + msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error("config error: " + msg) {}
};

struct GeometryError : std::runtime_error {
    explicit GeometryError(const std::string& msg) : std::runtime_error("geometry error: " + msg) {}
};

// Leading recurrence coefficient vanished at a concrete (n, x).
struct SingularStepError : std::runtime_error {
    SingularStepError(const std::string& msg, int order_n)
        : std::runtime_error("singular recurrence step at n=" + std::to_string(order_n) + ": " + msg),
          order(order_n) {}
    int order;
};

struct DegenerateRecurrenceError : std::runtime_error {
    explicit DegenerateRecurrenceError(const std::string& msg)
        : std::runtime_error("degenerate recurrence: " + msg) {}
};

struct ReferenceNotConverged : std::runtime_error {
    explicit ReferenceNotConverged(const std::string& msg)
        : std::runtime_error("reference not converged: " + msg) {}
};

struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error("internal error: " + msg) {}
};

} // namespace greenrec

#endif

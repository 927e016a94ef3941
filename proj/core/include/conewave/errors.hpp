#ifndef CONEWAVE_ERRORS_HPP
#define CONEWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace conewave {

// Bad user-supplied parameters (negative lengths, out-of-range indices, ...).
// The CLI maps this to exit code 2.
class invalid_parameter : public std::invalid_argument {
public:
    explicit invalid_parameter(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical method failed its own quality gate (Wronskian drift, quadrature
// resolution, order overflow, resonance, truncation).  Carries the module and
// operation that raised it so the CLI can report "module.op: reason" and exit 3.
class numerical_error : public std::runtime_error {
public:
    numerical_error(std::string module, std::string op, const std::string& reason)
        : std::runtime_error(module + "." + op + ": " + reason),
          module_(std::move(module)),
          op_(std::move(op)) {}

    const std::string& module_name() const { return module_; }
    const std::string& op_name() const { return op_; }

private:
    std::string module_;
    std::string op_;
};

} // namespace conewave

#endif

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dagger {

enum class ErrorKind {
    division_by_zero,
    context_mismatch,
    uncertified_radius,
    uncertified_precision,
    uncertified_mode,
    not_distinguished,
    non_convergence,
    non_power_bounded,
    inadmissible_slope,
    unsupported_family,
    unsupported_localization,
    invalid_argument,
    parse_error,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can report it as a structured object.
class DaggerError : public std::runtime_error {
public:
    DaggerError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw DaggerError(kind, what);
}

}  // namespace dagger

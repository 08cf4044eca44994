#pragma once

#include <stdexcept>
#include <string>

namespace grdlab {

// Failure kinds shared across the library. Certificate verification does not
// throw; it reports structured verdicts instead (see derivation.hpp).
enum class Errc {
    duplicate_nodes,
    arity_mismatch,
    invalid_order,
    zero_dilation,
    order_mismatch,
    intersection_not_n,
    node_not_shared,
    degenerate_combination,
    row_out_of_range,
    zero_step,
    exact_unavailable,
    non_positive,
    replay_mismatch,
    division_by_zero,
    parse_error,
    internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace grdlab

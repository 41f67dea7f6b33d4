#pragma once

#include <stdexcept>
#include <string>

namespace raqmod {

// Weights of the operands of a binary operation do not match.
struct WeightError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The combinatorial primitive does not exist: some a^{(-r)}_{0,n} is nonzero,
// or the lower block of a recursion fails to close.
struct ObstructionViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Double Eisenstein family in total weight >= 12, where a cusp form enters.
struct CuspCorrectionRequired : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated q-expansion cannot be evaluated to the requested accuracy.
struct TailTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Petersson pairing between spaces with different h = r - s.
struct DegreeMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Product of constant parts is not integrable at the cusp.
struct NonDecayingIntegrand : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An identity guaranteed by construction failed; indicates a bug.
struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Malformed JSON or other user input (CLI exit code 2).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace raqmod

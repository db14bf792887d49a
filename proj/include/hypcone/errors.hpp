#pragma once

#include <stdexcept>
#include <string>

namespace hypcone {

/// Invalid argument (dimension mismatch, index out of range, bad spec).
class argument_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure (eigensolver non-convergence, factorization breakdown).
class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pivot too close to zero relative to the matrix scale.
class singular_pivot_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

/// Matrix fails the required definiteness (e.g. not positive definite).
class definiteness_error : public numerical_error {
public:
    using numerical_error::numerical_error;
};

/// Strategy not applicable to the requested cone (e.g. polar at k = n-1).
class strategy_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation requires a slice-form representation but got projection-form.
class unsupported_form_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// File parse failure; message names the offending line.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

} // namespace hypcone

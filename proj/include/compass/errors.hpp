#pragma once

#include <stdexcept>
#include <string>

namespace compass {

/// Base class for all errors raised by the library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// The requested state has (numerically) zero norm and cannot be constructed.
class null_state_error : public error {
public:
    explicit null_state_error(const std::string& what) : error(what) {}
};

/// A truncated number-basis representation is too small for the requested
/// evaluation to be trustworthy.
class truncation_error : public error {
public:
    explicit truncation_error(const std::string& what) : error(what) {}
};

/// Quantity is undefined on the vacuum (division by <n> = 0).
class undefined_for_vacuum_error : public error {
public:
    explicit undefined_for_vacuum_error(const std::string& what) : error(what) {}
};

/// A determinant-based criterion hit a vanishing denominator.
class degenerate_denominator_error : public error {
public:
    explicit degenerate_denominator_error(const std::string& what) : error(what) {}
};

/// The integration domain does not cover the state's support.
class domain_too_small_error : public error {
public:
    explicit domain_too_small_error(const std::string& what) : error(what) {}
};

/// A bracketed root/extremum search failed to locate its target.
class root_not_found_error : public error {
public:
    explicit root_not_found_error(const std::string& what) : error(what) {}
};

/// Requested moment/squeezing order is not supported.
class unsupported_order_error : public error {
public:
    explicit unsupported_order_error(const std::string& what) : error(what) {}
};

/// A sweep specification failed validation.
class invalid_spec_error : public error {
public:
    explicit invalid_spec_error(const std::string& what) : error(what) {}
};

/// File input/output failure.
class io_error : public error {
public:
    explicit io_error(const std::string& what) : error(what) {}
};

} // namespace compass

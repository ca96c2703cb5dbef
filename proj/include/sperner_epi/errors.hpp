#pragma once

#include <stdexcept>
#include <string>

namespace sepi {

/// Malformed or out-of-domain input (empty support, zero mass, bad JSON, ...).
class InvalidInput : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// A conditional result was asked about an instance that does not satisfy its
/// hypotheses. Never a counterexample.
class PreconditionError : public std::invalid_argument {
public:
	using std::invalid_argument::invalid_argument;
};

/// An exhaustive search would exceed its configured size limit.
class BudgetExceeded : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

}  // namespace sepi

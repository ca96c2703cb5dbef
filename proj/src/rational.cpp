#include "sperner_epi/rational.hpp"

#include <cctype>

#include "sperner_epi/errors.hpp"

namespace sepi {

namespace {

bool is_integer_literal(std::string_view s) {
	if(!s.empty() && s.front() == '-') {
		s.remove_prefix(1);
	}
	if(s.empty()) {
		return false;
	}
	for(char c : s) {
		if(!std::isdigit(static_cast<unsigned char>(c))) {
			return false;
		}
	}
	return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
	const auto slash = text.find('/');
	const std::string_view num = text.substr(0, slash);
	const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
	if(!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-') {
		throw InvalidInput("malformed rational \"" + std::string(text) + "\" (expected p/q)");
	}
	BigInt n(std::string{num});
	BigInt d(std::string{den});
	if(d == 0) {
		throw InvalidInput("zero denominator in \"" + std::string(text) + "\"");
	}
	return Rational(n, d);
}

std::string to_string(const Rational& value) {
	return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

}  // namespace sepi

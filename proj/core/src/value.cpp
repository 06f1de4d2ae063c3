#include "fairdiv/value.hpp"

#include <cctype>
#include <ostream>

#include "fairdiv/errors.hpp"

namespace fairdiv {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_int(std::string_view digits) {
  return mpz_class(std::string(digits), 10);
}

}  // namespace

Value::Value(long num, long den) {
  if (den == 0) throw DomainError("Value: zero denominator");
  q_ = mpq_class(num, 1);
  q_ /= mpq_class(den, 1);
}

Value::Value(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Value Value::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  mpq_class q;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw InputError("invalid rational '" + std::string(text) + "'");
    }
    mpz_class d = parse_int(den);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    q = mpq_class(parse_int(num), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw InputError("invalid decimal '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = whole.empty() ? mpz_class(0) : parse_int(whole);
    q = mpq_class(w * scale + parse_int(frac), scale);
  } else {
    if (!all_digits(s)) throw InputError("invalid number '" + std::string(text) + "'");
    q = mpq_class(parse_int(s));
  }
  q.canonicalize();
  if (negative) q = -q;
  return Value(q);
}

mpz_class Value::floor() const {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

mpz_class Value::ceil() const {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

std::string Value::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Value& Value::operator+=(const Value& o) {
  q_ += o.q_;
  return *this;
}

Value& Value::operator-=(const Value& o) {
  q_ -= o.q_;
  return *this;
}

Value& Value::operator*=(const Value& o) {
  q_ *= o.q_;
  return *this;
}

Value& Value::operator/=(const Value& o) {
  if (sgn(o.q_) == 0) throw DomainError("Value: division by zero");
  q_ /= o.q_;
  return *this;
}

Value Value::operator-() const { return Value(mpq_class(-q_)); }

std::ostream& operator<<(std::ostream& os, const Value& v) { return os << v.str(); }

}  // namespace fairdiv

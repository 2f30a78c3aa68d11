#pragma once

#include "lincrit/criterion.hpp"
#include "lincrit/example1.hpp"
#include "lincrit/example2.hpp"
#include "lincrit/matrix.hpp"
#include "lincrit/pade.hpp"
#include "lincrit/recurrence.hpp"

#include <json.hpp>

#include <string>

namespace lincrit {

using Json = nlohmann::ordered_json;

// Artifact version from git describe at configure time.
std::string lincrit_version();

// Rationals are [numerator, denominator] pairs of decimal strings. Readers also accept a bare
// decimal string ("-3", "2/7") or a JSON integer.
Json to_json(const Rational& x);
Rational rational_from_json(const Json& j);
// Decimal string with enough digits for the precision.
Json to_json(const BigFloat& x);

Json to_json(const Poly& p);
Poly poly_from_json(const Json& j);

Json to_json(const RatMat& m);
RatMat matrix_from_json(const Json& j);
// One row per line, entries "a" or "a/b" separated by commas.
std::string matrix_to_csv(const RatMat& m);
RatMat matrix_from_csv(const std::string& text);

Json to_json(const PadeSystem& sys);
PadeSystem pade_from_json(const Json& j);

// Coefficient table alpha_n^(0..m) for n = 0..n_end.
Json recurrence_to_json(const Recurrence& rec, long n_end);
Recurrence recurrence_from_json(const Json& j);

Json to_json(const Gamma& g);
Gamma gamma_from_json(const Json& j);
// Tabulated values over [n_start, n_end].
Json family_to_json(const ApproximationFamily& fam, long n_start, long n_end);
ApproximationFamily family_from_json(const Json& j);

Json to_json(const IndexSet& s);
Json to_json(const CertifiedValue& v);
Json to_json(const LinearForms& lf);
Json to_json(const Example1Values& v);
Json to_json(const MinQResult& r);
Json to_json(const Example2Table& t);
Json to_json(const MinorDecayReport& r);
// Columns n, mu, cols, value, error, nth_root.
std::string decay_to_csv(const MinorDecayReport& r);
Json to_json(const ProbeReport& r);
Json to_json(const IntegralityAudit& a);
Json to_json(const RefinedMinor& r);
Json to_json(const CriterionReport& r);

// {"kind", "version", "precision_bits", ...payload}.
Json report(const std::string& kind, mpfr_prec_t precision_bits, const Json& payload);

}  // namespace lincrit

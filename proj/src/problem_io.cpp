#include "vz/problem_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vz/error.hpp"

namespace vz {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

cplx read_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw Error(ErrorKind::Parse, "expected a complex number, got " + j.dump());
}

DensePolynomial read_poly(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "expected a coefficient list");
  std::vector<cplx> c;
  for (const auto& v : j) c.push_back(read_complex(v));
  DensePolynomial p(std::move(c));
  p.trim_exact();
  return p;
}

ojson write_complex(const cplx& z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ojson write_poly(const DensePolynomial& p) {
  ojson a = ojson::array();
  for (const auto& c : p.coeffs()) a.push_back(write_complex(c));
  return a;
}

PolarForm read_polar(const json& j) {
  PolarForm q;
  for (const auto& pj : j.at("poles")) {
    Pole p;
    p.location = read_complex(pj);
    for (const auto& c : pj.at("coeffs")) p.coeffs.push_back(read_complex(c));
    if (pj.contains("order") && pj.at("order").get<int>() != p.order())
      throw Error(ErrorKind::Parse, "order does not match the coefficient count");
    q.poles.push_back(std::move(p));
  }
  if (j.contains("polynomial_part")) q.polynomial_part = read_poly(j.at("polynomial_part"));
  q.validate();
  return q;
}

PolarForm read_quotient(const json& j) {
  const DensePolynomial num = read_poly(j.at("numerator"));
  std::vector<std::pair<cplx, int>> poles;
  for (const auto& pj : j.at("denominator_poles"))
    poles.emplace_back(read_complex(pj), pj.is_object() ? pj.value("order", 1) : 1);
  return polar_decompose(num, poles);
}

LemniscateProblem read_lemniscate(const json& j) {
  LemniscateProblem p;
  for (const auto& pj : j.at("polynomials")) p.polys.push_back(read_poly(pj));
  if (j.contains("multipliers")) p.multipliers = j.at("multipliers").get<std::vector<int>>();
  p.validate();
  return p;
}

}  // namespace

std::vector<cplx> Problem::sites() const {
  if (rational) return rational->locations();
  if (lemniscate) return lemniscate->sites();
  return {};
}

Problem parse_problem(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  Problem p;
  try {
    if (j.contains("poles"))
      p.rational = read_polar(j);
    else if (j.contains("numerator"))
      p.rational = read_quotient(j);
    else if (j.contains("polynomials"))
      p.lemniscate = read_lemniscate(j);
    else
      throw Error(ErrorKind::Parse, "problem needs \"poles\", \"numerator\" or \"polynomials\"");
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string to_json(const PolarForm& q) {
  ojson j;
  j["poles"] = ojson::array();
  for (const auto& p : q.poles) {
    ojson pj;
    pj["re"] = p.location.real();
    pj["im"] = p.location.imag();
    pj["order"] = p.order();
    pj["coeffs"] = ojson::array();
    for (const auto& c : p.coeffs) pj["coeffs"].push_back(write_complex(c));
    j["poles"].push_back(pj);
  }
  j["polynomial_part"] = q.has_polynomial_part() ? write_poly(q.polynomial_part) : ojson::array();
  return j.dump(2);
}

std::string to_json(const LemniscateProblem& p) {
  ojson j;
  j["polynomials"] = ojson::array();
  for (const auto& poly : p.polys) j["polynomials"].push_back(write_poly(poly));
  j["multipliers"] = ojson::array();
  for (std::size_t i = 0; i < p.polys.size(); ++i) j["multipliers"].push_back(p.multiplier(i));
  return j.dump(2);
}

}  // namespace vz

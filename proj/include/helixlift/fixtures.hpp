#pragma once

#include <charconv>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "helixlift/curve.hpp"

namespace helixlift::fixtures {

/// (6s, 3s^2, s^3): a general helix with kappa/tau = 1, |a'| = 3(s^2 + 2).
inline ParamCurve paper_cubic(Interval domain = {-3.0, 3.0}) {
  return ParamCurve::polynomial({{{0.0, 6.0}, {0.0, 0.0, 3.0}, {0.0, 0.0, 0.0, 1.0}}}, domain);
}

/// (a cos t, a sin t, b t): kappa = a/(a^2+b^2), tau = b/(a^2+b^2).
inline ParamCurve circular_helix(double radius, double pitch, Interval domain = {0.0, 2.0 * std::numbers::pi}) {
  return ParamCurve::circular_helix(radius, pitch, domain);
}

/// (t, t^2, t^3): twisted everywhere, not a helix of any kind.
inline ParamCurve twisted_cubic(Interval domain = {-1.5, 1.5}) {
  return ParamCurve::polynomial({{{0.0, 1.0}, {0.0, 0.0, 1.0}, {0.0, 0.0, 0.0, 1.0}}}, domain);
}

/// Circle of radius r in the xy-plane; torsion vanishes identically.
inline ParamCurve planar_circle(double radius, Interval domain = {0.0, 2.0 * std::numbers::pi}) {
  return ParamCurve::circular_helix(radius, 0.0, domain);
}

/// Unit-speed straight line (t, 0, 0).
inline ParamCurve line(Interval domain = {0.0, 1.0}) {
  return ParamCurve::polynomial({{{0.0, 1.0}, {0.0}, {0.0}}}, domain);
}

namespace detail {

inline std::vector<double> parse_numbers(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      fail(ErrorKind::InvalidArgument, "bad number '" + std::string(item) + "' in fixture name");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

/// True when `name` names a built-in fixture (possibly with bad arguments).
inline bool is_fixture_name(std::string_view name) {
  const std::string_view head = name.substr(0, name.find(':'));
  return head == "paper_cubic" || head == "circular_helix" || head == "twisted_cubic" || head == "planar_circle" ||
         head == "line";
}

/// Built-in curves addressable by name: paper_cubic, circular_helix:a,b,
/// twisted_cubic, planar_circle:r, line.
inline ParamCurve by_name(std::string_view name) {
  const auto colon = name.find(':');
  const std::string_view head = name.substr(0, colon);
  const std::vector<double> args =
      colon == std::string_view::npos ? std::vector<double>{} : detail::parse_numbers(name.substr(colon + 1));
  std::size_t arity = 0;
  if (head == "circular_helix") arity = 2;
  if (head == "planar_circle") arity = 1;
  if (args.size() != arity) {
    fail(ErrorKind::InvalidArgument,
         "fixture '" + std::string(head) + "' takes " + std::to_string(arity) + " argument(s)");
  }
  if (head == "paper_cubic") return paper_cubic();
  if (head == "twisted_cubic") return twisted_cubic();
  if (head == "line") return line();
  if (head == "circular_helix") return circular_helix(args[0], args[1]);
  if (head == "planar_circle") return planar_circle(args[0]);
  fail(ErrorKind::UnknownKind, "unknown fixture '" + std::string(name) + "'");
}

}  // namespace helixlift::fixtures

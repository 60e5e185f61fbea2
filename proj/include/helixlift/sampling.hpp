#pragma once

#include <charconv>
#include <cstddef>
#include <string>

#include "helixlift/frenet.hpp"

namespace helixlift {

/// Locale-independent rendering with 17 significant digits.
inline std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ec == std::errc{} ? ptr : buf);
}

/// Comma-separated samples at n uniform parameters. With frames, points where
/// the frame is undefined get empty frame columns and degenerate = 1.
inline std::string export_samples(const ParamCurve& curve, std::size_t n, bool with_frames,
                                  const Tolerances& tol = {}) {
  std::string out = "t,x,y,z";
  if (with_frames) out += ",Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau,degenerate";
  out += '\n';
  auto put = [&out](double v) {
    out += ',';
    out += format_number(v);
  };
  for (double t : uniform_grid(curve.domain(), n)) {
    const Vec3 p = curve.position(t);
    out += format_number(t);
    put(p.x);
    put(p.y);
    put(p.z);
    if (with_frames) {
      try {
        const FrenetFrame f = frame_at(curve, t, tol);
        for (const Vec3& v : {f.T, f.N, f.B}) {
          put(v.x);
          put(v.y);
          put(v.z);
        }
        put(f.kappa);
        put(f.tau);
        out += ",0";
      } catch (const GeometryError& e) {
        if (!is_geometric(e.kind())) throw;
        out += ",,,,,,,,,,,,1";
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace helixlift

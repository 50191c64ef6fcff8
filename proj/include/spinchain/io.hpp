#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>

namespace spinchain {

// 17 significant digits: the shortest fixed precision that round-trips
// every double. All emitted numbers go through this one function so the
// export and JSON/CSV formats stay diff-stable.
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_entry(std::ostream& os, std::size_t r, std::size_t s,
                        double re, double im) {
  os << r << ' ' << s << ' ' << format_g17(re) << ' ' << format_g17(im)
     << '\n';
}

inline bool nonzero(double re, double im) { return re != 0.0 || im != 0.0; }

inline void split(double v, double& re, double& im) { re = v; im = 0.0; }
inline void split(const std::complex<double>& v, double& re, double& im) {
  re = v.real();
  im = v.imag();
}

}  // namespace detail

// Matrix export contract: header "dim <2^N> basis <eps|lambda>", then one
// line per nonzero entry "r s re im" with r <= s, row-major.
template <typename Derived>
void write_matrix(std::ostream& os, const Eigen::MatrixBase<Derived>& H,
                  const std::string& basis_tag) {
  os << "dim " << H.rows() << " basis " << basis_tag << '\n';
  for (Eigen::Index r = 0; r < H.rows(); ++r) {
    for (Eigen::Index s = r; s < H.cols(); ++s) {
      double re, im;
      detail::split(H(r, s), re, im);
      if (detail::nonzero(re, im))
        detail::write_entry(os, static_cast<std::size_t>(r),
                            static_cast<std::size_t>(s), re, im);
    }
  }
}

}  // namespace spinchain

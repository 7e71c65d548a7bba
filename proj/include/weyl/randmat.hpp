#pragma once

#include <complex>

#include "weyl/common.hpp"
#include "weyl/linalg.hpp"
#include "weyl/montecarlo.hpp"
#include "weyl/rng.hpp"
#include "weyl/root_system.hpp"

namespace weyl::rmt {

enum class Algebra { su_n, so_odd, so_even };

inline Algebra algebra_for(Family family, int rank) {
  switch (family) {
    case Family::A: return Algebra::su_n;
    case Family::B: return Algebra::so_odd;
    case Family::D: return Algebra::so_even;
  }
  return Algebra::su_n;
}

/// Matrix size N of the sampled algebra for chamber rank n.
inline int matrix_size(Family family, int rank) {
  switch (family) {
    case Family::A: return rank;          // u_n (trace direction included)
    case Family::B: return 2 * rank + 1;  // so(2n+1)
    case Family::D: return 2 * rank;      // so(2n)
  }
  return rank;
}

/// Gaussian matrix drawn from the algebra at time t.
///
/// so(N): real skew-symmetric, M_ij ~ Normal(0, t) for i<j, M_ji = -M_ij.
/// su(n): skew-Hermitian i H with H Hermitian, H_jj ~ Normal(0, t) and
///        Re/Im H_jk ~ Normal(0, t/2) for j<k.
///
/// With these scales the eigenvalue diffusion has unit variance per
/// coordinate, so the chamber point at time t matches the h-transformed
/// Brownian motion run to time t. Norm bookkeeping: for su,
/// |M|_HS^2 = sum lambda_j^2 with expectation (n + 2m) t = n^2 t; for so,
/// |M|_HS^2 = 2 sum lambda_j^2 with expectation 2 (n + 2m) t = (N^2 - N) t.
struct MatrixSample {
  Algebra algebra = Algebra::su_n;
  int size = 0;     // N
  double t = 1.0;
  Mat herm_re;      // for su: H = -iM (Hermitian); for so: unused
  Mat herm_im;      // imaginary part of H (antisymmetric) for su
  Mat skew;         // for so: the real skew-symmetric M

  MatrixSample(Algebra a, int n, double t_)
      : algebra(a), size(n), t(t_), herm_re(a == Algebra::su_n ? n : 0),
        herm_im(a == Algebra::su_n ? n : 0),
        skew(a == Algebra::su_n ? 0 : n) {}

  double hs_norm_sq() const {
    double s = 0.0;
    if (algebra == Algebra::su_n) {
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
          s += sq(herm_re.at(i, j)) + sq(herm_im.at(i, j));
    } else {
      for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) s += sq(skew.at(i, j));
    }
    return s;
  }
};

inline MatrixSample sample_matrix(Algebra algebra, int size, double t,
                                  std::uint64_t seed, std::uint64_t index = 0) {
  if (!(t > 0.0)) throw validation_error("sample_matrix requires t > 0");
  if (size < 1) throw validation_error("matrix size must be >= 1");
  RngStream rng = make_stream(seed, 3, index);
  MatrixSample m(algebra, size, t);
  const double s = std::sqrt(t);
  if (algebra == Algebra::su_n) {
    const double so = std::sqrt(t / 2.0);
    for (int i = 0; i < size; ++i) {
      m.herm_re.at(i, i) = s * rng.gauss();
      m.herm_im.at(i, i) = 0.0;
      for (int j = i + 1; j < size; ++j) {
        const double re = so * rng.gauss();
        const double im = so * rng.gauss();
        m.herm_re.at(i, j) = re;
        m.herm_re.at(j, i) = re;
        m.herm_im.at(i, j) = im;
        m.herm_im.at(j, i) = -im;
      }
    }
  } else {
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j) {
        const double v = s * rng.gauss();
        m.skew.at(i, j) = v;
        m.skew.at(j, i) = -v;
      }
  }
  return m;
}

/// Eigenvalues of the sample divided by i, sorted decreasingly, mapped to
/// the chamber: all n values for su_n; the n nonnegative members of the
/// +-i lambda pairs for so (the odd case discards its structural zero).
/// The so(2n) spectrum does not determine the sign of lambda_n, so the
/// D-chamber point is reported with lambda_n >= 0.
inline Vec eigen_chamber_point(const MatrixSample& m) {
  // real symmetric embedding of the Hermitian matrix H = -iM:
  // [[Re H, -Im H], [Im H, Re H]] has each eigenvalue of H twice
  const int N = m.size;
  Mat emb(2 * N);
  if (m.algebra == Algebra::su_n) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        emb.at(i, j) = m.herm_re.at(i, j);
        emb.at(N + i, N + j) = m.herm_re.at(i, j);
        emb.at(i, N + j) = -m.herm_im.at(i, j);
        emb.at(N + i, j) = m.herm_im.at(i, j);
      }
  } else {
    // H = -iM is purely imaginary: Re H = 0, Im H = -M... with
    // M skew-symmetric either sign convention yields the same spectrum
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        emb.at(i, N + j) = -m.skew.at(i, j);
        emb.at(N + i, j) = m.skew.at(i, j);
      }
  }
  std::vector<double> ev = jacobi_eigenvalues(emb);  // 2N values, each doubled
  Vec lambda;
  if (m.algebra == Algebra::su_n) {
    for (int k = 0; k < 2 * N; k += 2) lambda.push_back(ev[k]);
  } else {
    const int n = N / 2;  // chamber rank for both so(2n) and so(2n+1)
    for (int k = 0; k < 2 * n; k += 2) lambda.push_back(ev[k]);
  }
  return lambda;
}

/// i.i.d. chamber points from the algebra ensemble (counter-based streams;
/// embarrassingly parallel and worker-count independent).
inline std::vector<Vec> ensemble_eigen_samples(Algebra algebra, int size, double t,
                                               long long n_samples,
                                               std::uint64_t seed) {
  if (n_samples < 1) throw validation_error("n_samples must be >= 1");
  std::vector<Vec> out(n_samples);
  mc::detail_mc::parallel_for(n_samples, [&](long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i)
      out[i] = eigen_chamber_point(sample_matrix(algebra, size, t, seed, i));
  });
  return out;
}

}  // namespace weyl::rmt

#pragma once

#include "ahprank/error.hpp"
#include "ahprank/pcm.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>

#ifndef AHPRANK_FIXTURE_DIR
#error "AHPRANK_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace testing {

inline std::string fixture_path(const std::string& name) { return std::string(AHPRANK_FIXTURE_DIR) + "/" + name; }

inline ahprank::IncompletePCM fixture(const std::string& name) { return ahprank::read_matrix_file(fixture_path(name)); }

/// Csato's seven-alternative example with b = 2, typed in by hand.
inline Eigen::MatrixXd csato_entries() {
  Eigen::MatrixXd a(7, 7);
  a << 1, 2, 0, 0, 0, 2, 2,        //
      0.5, 1, 2, 2, 0, 0, 0,       //
      0, 0.5, 1, 2, 2, 0, 0,       //
      0, 0.5, 0.5, 1, 2, 2, 0,     //
      0, 0, 0.5, 0.5, 1, 2, 2,     //
      0.5, 0, 0, 0.5, 0.5, 1, 0,   //
      0.5, 0, 0, 0, 0.5, 0, 1;
  return a;
}

/// Consistent matrix a_ij = w_i / w_j on the pairs where `mask` is nonzero.
inline ahprank::IncompletePCM consistent(const Eigen::VectorXd& w, const Eigen::MatrixXi& mask) {
  const auto n = w.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (i != j && (mask(i, j) || mask(j, i))) a(i, j) = w(i) / w(j);
  return ahprank::IncompletePCM::validate(a);
}

inline ahprank::IncompletePCM complete_consistent(const Eigen::VectorXd& w) {
  return consistent(w, Eigen::MatrixXi::Ones(w.size(), w.size()));
}

/// Code of the ahprank::Error thrown by f, or nullopt when f returns normally.
template <typename F>
std::optional<ahprank::Errc> error_code(F&& f) {
  try {
    f();
  } catch (const ahprank::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing

#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gzroots/genrep.hpp"

namespace gz {

constexpr double default_relation_tol = 1e-9;
constexpr double default_rank_tol = 1e-7;
constexpr int max_dense_dim = 512;

// a_ii = 2, a_{i,i+-1} = -1, otherwise 0
Eigen::MatrixXi cartan_matrix(int rank);

struct RelationSuite {
  Eigen::MatrixXi cartan;
  double tolerance = default_relation_tol;
  std::map<std::string, double> report;
};

struct VerificationReport {
  std::map<std::string, double> residuals;
  bool passed = true;
  double tolerance = default_relation_tol;
  std::vector<Eigen::VectorXcd> singular_vectors;
  std::vector<int> invariant_dims;

  void record(const std::string& name, double value);
  void merge(const VerificationReport& other);
};

// Only the matrices and q are read from here on.
struct DenseGenerators {
  int dim = 0;
  cplx q;
  std::vector<Eigen::MatrixXcd> e;
  std::vector<Eigen::MatrixXcd> f;
  std::vector<Eigen::MatrixXcd> k;
  std::vector<Eigen::MatrixXcd> k_inv;
};

DenseGenerators to_dense(const GeneratorSet& g);

VerificationReport check_defining_relations(const GeneratorSet& g, double tol = default_relation_tol,
                                            ExecPolicy policy = ExecPolicy::parallel);

VerificationReport check_root_of_unity_constraints(const GeneratorSet& g, UnityOrder m,
                                                   double tol = default_relation_tol);

// Orthonormal basis of the joint kernel of all e_l, one block per k-eigenspace.
std::vector<Eigen::VectorXcd> find_singular_vectors(const GeneratorSet& g, double tol = default_rank_tol);

// Orthonormal basis of the smallest subspace containing `start` and stable
// under every e_l, f_l, k_l.
Eigen::MatrixXcd invariant_closure(const DenseGenerators& d, const Eigen::MatrixXcd& start,
                                   double tol = default_rank_tol);

std::vector<int> invariant_subspace_scan(const GeneratorSet& g, double tol = default_rank_tol);

struct ComponentInfo {
  int dim = 0;
  int kernel_dim = 0;  // dim of (joint e-kernel) inside the component
  // kernel_dim == 1: no proper invariant subspace found at tol
  bool no_proper_subspace = false;
};

struct ModuleAnalysis {
  std::vector<Eigen::VectorXcd> singular_vectors;
  std::vector<ComponentInfo> components;
  bool direct_sum = false;  // the closures span the module and their dims add up
};

ModuleAnalysis analyze_module(const GeneratorSet& g, double tol = default_rank_tol);

int numerical_rank(const Eigen::MatrixXcd& a, double tol);

}  // namespace gz

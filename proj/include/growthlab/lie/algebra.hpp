#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "growthlab/lie/gaussian_rational.hpp"

namespace growthlab::lie {

inline constexpr int kMaxAlgebraDim = 8;

/// Complex Lie algebra given by holomorphic structure equations
///   dξ^k = Σ_{i<j} c^k_{ij} ξ^i ∧ ξ^j
/// on a basis ξ^1..ξ^n of (1,0)-covectors. Indices are 0-based in code and
/// 1-based in files and messages.
class ComplexLieAlgebra {
  public:
    explicit ComplexLieAlgebra(int n, std::vector<std::string> labels = {});

    int dim() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Adds value · ξ^i ∧ ξ^j to dξ^k (i ≠ j, any order).
    void add_constant(int k, int i, int j, const GQ& value);
    /// c^k_{ij} for i < j.
    const GQ& constant(int k, int i, int j) const;

    /// Same algebra on the basis ξ^{perm[0]}, ..., ξ^{perm[n-1]}.
    ComplexLieAlgebra permuted(const std::vector<int>& perm) const;

    nlohmann::json to_json() const;

  private:
    int n_;
    std::vector<std::string> labels_;
    std::vector<GQ> c_;  // n × n × n, only i < j used
};

ComplexLieAlgebra direct_sum(const ComplexLieAlgebra& a, const ComplexLieAlgebra& b);

/// abelian (alias torus) of dimension n, heisenberg (alias iwasawa), sl2c,
/// nakamura.
ComplexLieAlgebra builtin_algebra(const std::string& name, int n = 3);
std::vector<std::string> builtin_algebra_names();

struct JacobiReport {
    bool holds = true;
    /// First failing basis triple (a < b < c) and the component k of
    /// d²ξ^k where it shows, 0-based.
    int a = -1, b = -1, c = -1, k = -1;
    std::string message;
};

/// d² = 0 on every ξ^k, equivalently the Jacobi identity.
JacobiReport check_jacobi(const ComplexLieAlgebra& algebra);

/// Malformed structure-constant input. line is 0 when unknown.
class StructureError : public std::runtime_error {
  public:
    StructureError(const std::string& source, int line, const std::string& field, const std::string& what);
    int line() const { return line_; }
    const std::string& field() const { return field_; }

  private:
    int line_;
    std::string field_;
};

/// {"dim": n, "constants": [[k, i, j, re, im], ...], "labels": [...]}; k, i, j
/// are 1-based, re/im are integers or fraction strings, im is optional.
ComplexLieAlgebra parse_structure_json(const std::string& text, const std::string& source = "<input>");
ComplexLieAlgebra load_structure_file(const std::string& path);

} // namespace growthlab::lie

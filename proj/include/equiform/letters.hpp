#pragma once

#include "equiform/homogeneous.hpp"

#include <map>
#include <string>
#include <vector>

namespace equiform {

/// A V-valued invariant basic form: one component per basis vector of V.
struct Letter {
    std::string name;
    std::vector<Form> components;
    Bidegree bidegree;

    int degree() const { return bidegree.total(); }
};

enum class Symmetry { none, symmetric, antisymmetric };

std::string to_string(Symmetry s);

/// Invariant multilinear map V^r -> K stored as a sparse tensor over
/// 0-based index tuples.
struct Contraction {
    std::string name;
    int arity = 0;
    std::map<std::vector<int>, KElem> entries;
    Symmetry symmetry = Symmetry::none;

    KElem entry(const std::vector<int>& index) const;
};

/// Letter built from arbitrary components after checking homogeneity,
/// basicness and infinitesimal equivariance.
Letter make_letter(const HomogeneousSetup& setup, std::string name, std::vector<Form> components);

Letter letter_a(const HomogeneousSetup& setup, std::string name = "a");
Letter letter_b(const HomogeneousSetup& setup, std::string name = "b");
/// Components must be purely horizontal with constant coefficients.
Letter letter_from_T_valued_map(const HomogeneousSetup& setup, std::string name, std::vector<Form> components);
/// psi[j][i] = psi(v_j, v_i), constant horizontal forms; component i is sum_j a_j psi(v_j, v_i).
Letter letter_from_bilinear_map(const HomogeneousSetup& setup, std::string name,
                                const std::vector<std::vector<Form>>& psi);
/// D^X L = dL + (rho omega) ^ L, computed on the extended frame.
Letter covariant_derivative(const HomogeneousSetup& setup, const Letter& letter, std::string name = "");

/// Returns the first gauge label under which the components fail to be
/// equivariant, or 0 if they are equivariant.
int equivariance_violation(const HomogeneousSetup& setup, const std::vector<Form>& components);

Contraction contraction_dot(std::size_t dim, std::string name = "dot");
/// Levi-Civita tensor of arity dim.
Contraction contraction_det(std::size_t dim, std::string name = "det");
/// Throws if the tensor is not annihilated by every rho(A).
void check_contraction(const HomogeneousSetup& setup, const Contraction& m);
bool is_invariant_contraction(const HomogeneousSetup& setup, const Contraction& m, int* failing_label = nullptr);

Form contract_syllable(const Contraction& m, const std::vector<const Letter*>& letters);
Form contract_syllable(const Contraction& m, const std::vector<Letter>& letters);

}  // namespace equiform

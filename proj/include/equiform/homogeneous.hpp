#pragma once

#include "equiform/form.hpp"
#include "equiform/linalg.hpp"

#include <memory>
#include <string>
#include <vector>

namespace equiform {

/// Coefficient c^i_{jk} of e^j ^ e^k in de^i (indices are 1-based labels).
struct StructureConstant {
    int i = 0, j = 0, k = 0;
    KElem value;
};

struct LieAlgebraData {
    int dimension = 0;
    std::vector<StructureConstant> constants;
};

struct Splitting {
    std::vector<int> horizontal;
    std::vector<int> gauge;
};

/// rho_*(E_A) for each gauge label, in the order of Splitting::gauge.
struct Representation {
    int dimension = 0;
    std::vector<KMatrix> matrices;
};

struct SetupInput {
    RingPtr ring;
    LieAlgebraData lie;
    Splitting splitting;
    Representation representation;
};

class SetupError : public Error {
public:
    explicit SetupError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Pair of matrices acting on the horizontal and vertical generators.
struct GroupElement {
    KMatrix on_horizontal;
    KMatrix on_vertical;
};

class HomogeneousSetup;
using SetupPtr = std::shared_ptr<const HomogeneousSetup>;

/// Validated Lie algebra with reductive splitting and fiber representation,
/// together with the single frame used for every form:
///   horizontal e^t, vertical b_i, gauge e^A, raw da_i.
class HomogeneousSetup {
public:
    static SetupPtr validate(SetupInput input);

    const RingPtr& ring() const { return ring_; }
    const FramePtr& frame() const { return frame_; }
    int lie_dimension() const { return lie_.dimension; }
    std::size_t horizontal_count() const { return split_.horizontal.size(); }
    std::size_t fiber_dim() const { return static_cast<std::size_t>(rep_.dimension); }
    std::size_t gauge_count() const { return split_.gauge.size(); }
    const Splitting& splitting() const { return split_; }
    int gauge_label(std::size_t a) const { return split_.gauge.at(a); }
    std::size_t gauge_position(int label) const;

    std::size_t horizontal_gen(std::size_t t) const { return t; }
    std::size_t vertical_gen(std::size_t i) const { return horizontal_count() + i; }
    std::size_t gauge_gen(std::size_t a) const { return horizontal_count() + fiber_dim() + a; }
    std::size_t raw_gen(std::size_t i) const { return horizontal_count() + fiber_dim() + gauge_count() + i; }
    /// Frame generator carrying the Maurer-Cartan form with the given label.
    std::size_t lie_gen(int label) const;
    BasisWord basic_mask() const;

    const KElem& structure_constant(int i, int j, int k) const;
    const KMatrix& rho(std::size_t a) const { return rep_.matrices.at(a); }
    /// (ad E_A)|_T acting on horizontal generators: L e^{t} = sum_s ad_T(A)(t,s) e^{s}.
    const KMatrix& ad_horizontal(std::size_t a) const { return ad_t_.at(a); }
    const std::string& vertical_convention() const { return convention_; }
    /// Entry (i, j) of rho(a) as it enters b_i = da_i + sum_j a_j (rho omega)_{ij}.
    const KElem& connection_entry(std::size_t a, std::size_t i, std::size_t j) const
    {
        return row_convention_ ? rep_.matrices.at(a).at(i, j) : rep_.matrices.at(a).at(j, i);
    }
    const std::vector<std::string>& warnings() const { return warnings_; }

    Form horizontal(std::size_t t) const { return generator_form(frame_, horizontal_gen(t)); }
    Form vertical(std::size_t i) const { return generator_form(frame_, vertical_gen(i)); }
    Scalar fiber_coordinate(std::size_t i) const { return Scalar::fiber(ring_, i); }
    Scalar aa() const;

    /// de^i in the extended frame.
    const Form& maurer_cartan(int label) const;
    /// b_i in the extended frame {e^A, da}.
    const Form& vertical_extended(std::size_t i) const { return b_ext_.at(i); }

    Form to_extended(const Form& x) const;
    Form to_mixed(const Form& x) const;
    /// d on the extended frame (no b generators allowed).
    Form d_extended(const Form& x) const;
    /// d by pullback without basicness checks; result in the mixed frame.
    Form pullback_derivative(const Form& x) const;
    Form exterior_derivative(const Form& x) const;

    Form fundamental_contraction(std::size_t a, const Form& x) const;
    Form lie_derivative(std::size_t a, const Form& x) const;
    bool is_basic(const Form& x) const;
    bool is_invariant(const Form& x) const;

    /// rho_*(A) a as scalars, for a gauge combination given by position a.
    std::vector<Scalar> rho_times_a(std::size_t a) const;

    std::vector<KVector> stabilizer_algebra(const Point& pt) const;
    int invariant_dimension(Bidegree bd, const std::vector<KVector>& stab_basis,
                            const std::vector<GroupElement>& extra = {}) const;
    /// All basic words of a bidegree.
    std::vector<BasisWord> basic_words(Bidegree bd) const;

    Point origin() const;

private:
    HomogeneousSetup() = default;

    RingPtr ring_;
    LieAlgebraData lie_;
    Splitting split_;
    Representation rep_;
    FramePtr frame_;
    std::vector<KElem> c_;
    std::vector<KMatrix> ad_t_;
    std::vector<Form> de_;
    std::vector<Form> b_ext_;
    std::vector<Form> da_mixed_;
    std::vector<int> lie_gen_;
    std::string convention_;
    bool row_convention_ = true;
    std::vector<std::string> warnings_;
};

SetupPtr validate_setup(SetupInput input);

}  // namespace equiform

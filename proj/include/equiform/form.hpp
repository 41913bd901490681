#pragma once

#include "equiform/scalar.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace equiform {

enum class GenKind : uint8_t { horizontal, vertical, gauge, raw_vertical };

struct Generator {
    std::string name;
    GenKind kind;
    int label;  // index shown in rendered words
};

/// Bitmask over frame generators; bit i set means generator i is present.
using BasisWord = uint64_t;

struct Bidegree {
    int p = 0;
    int q = 0;
    auto operator<=>(const Bidegree&) const = default;
    int total() const { return p + q; }
    Bidegree operator+(const Bidegree& o) const { return {p + o.p, q + o.q}; }
};

std::string to_string(const Bidegree& b);

/// An ordered list of degree-one generators.
class Frame {
public:
    Frame(RingPtr ring, std::vector<Generator> generators);

    const RingPtr& ring() const { return ring_; }
    std::size_t size() const { return gens_.size(); }
    const Generator& generator(std::size_t i) const { return gens_.at(i); }
    std::optional<std::size_t> find(const std::string& name) const;
    BasisWord mask(GenKind kind) const { return masks_[static_cast<int>(kind)]; }
    Bidegree bidegree(BasisWord w) const;
    std::string render(BasisWord w) const;

private:
    RingPtr ring_;
    std::vector<Generator> gens_;
    BasisWord masks_[4] = {0, 0, 0, 0};
};

using FramePtr = std::shared_ptr<const Frame>;

/// Sign of x ^ y for disjoint words x, y relative to the sorted word x | y.
inline int wedge_sign(BasisWord x, BasisWord y)
{
    int parity = 0;
    while (y) {
        int j = std::countr_zero(y);
        parity ^= std::popcount(j == 63 ? BasisWord{0} : x >> (j + 1)) & 1;
        y &= y - 1;
    }
    return parity ? -1 : 1;
}

/// Sparse element of the exterior algebra over a frame with coefficients of
/// type Coeff (Scalar for forms, KElem for forms evaluated at a point).
template <class Coeff>
class FormOver {
public:
    using Terms = std::map<BasisWord, Coeff>;

    FormOver() = default;
    explicit FormOver(FramePtr frame) : frame_(std::move(frame)) {}
    FormOver(FramePtr frame, BasisWord w, Coeff c) : frame_(std::move(frame)) { add_term(w, std::move(c)); }

    const FramePtr& frame() const { return frame_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add_term(BasisWord w, const Coeff& c)
    {
        if (c.is_zero())
            return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    Coeff coefficient(BasisWord w) const
    {
        auto it = terms_.find(w);
        return it == terms_.end() ? Coeff() : it->second;
    }

    FormOver& operator+=(const FormOver& o)
    {
        adopt(o);
        for (auto& [w, c] : o.terms_)
            add_term(w, c);
        return *this;
    }
    FormOver& operator-=(const FormOver& o)
    {
        adopt(o);
        for (auto& [w, c] : o.terms_)
            add_term(w, -c);
        return *this;
    }
    FormOver operator-() const
    {
        FormOver r = *this;
        for (auto& [w, c] : r.terms_)
            c = -c;
        return r;
    }
    friend FormOver operator+(FormOver a, const FormOver& b) { return a += b; }
    friend FormOver operator-(FormOver a, const FormOver& b) { return a -= b; }

    FormOver scaled(const Coeff& s) const
    {
        FormOver r(frame_);
        if (s.is_zero())
            return r;
        for (auto& [w, c] : terms_) {
            Coeff v = c * s;
            if (!v.is_zero())
                r.terms_.emplace_hint(r.terms_.end(), w, std::move(v));
        }
        return r;
    }

    FormOver wedge(const FormOver& o) const
    {
        FormOver r(frame_ ? frame_ : o.frame_);
        check_frames(o);
        for (auto& [x, cx] : terms_)
            for (auto& [y, cy] : o.terms_) {
                if (x & y)
                    continue;
                Coeff v = cx * cy;
                if (wedge_sign(x, y) < 0)
                    v = -v;
                r.add_term(x | y, v);
            }
        return r;
    }

    /// Contraction with the dual of generator g (a graded derivation of degree -1).
    FormOver interior(std::size_t g) const
    {
        FormOver r(frame_);
        BasisWord bit = BasisWord{1} << g;
        for (auto& [w, c] : terms_) {
            if (!(w & bit))
                continue;
            int below = std::popcount(w & (bit - 1));
            r.add_term(w & ~bit, below % 2 ? -c : c);
        }
        return r;
    }

    std::map<Bidegree, FormOver> bidegree_split() const
    {
        std::map<Bidegree, FormOver> r;
        for (auto& [w, c] : terms_) {
            auto [it, ins] = r.try_emplace(frame_->bidegree(w), frame_);
            it->second.terms_.emplace_hint(it->second.terms_.end(), w, c);
        }
        return r;
    }

    /// Total degree if homogeneous (nullopt for zero or mixed forms).
    std::optional<int> degree() const
    {
        std::optional<int> d;
        for (auto& [w, c] : terms_) {
            int k = std::popcount(w);
            if (d && *d != k)
                return std::nullopt;
            d = k;
        }
        return d;
    }

    std::optional<Bidegree> bidegree() const
    {
        std::optional<Bidegree> d;
        for (auto& [w, c] : terms_) {
            Bidegree b = frame_->bidegree(w);
            if (d && *d != b)
                return std::nullopt;
            d = b;
        }
        return d;
    }

    /// Union of all generators appearing.
    BasisWord support() const
    {
        BasisWord s = 0;
        for (auto& [w, c] : terms_)
            s |= w;
        return s;
    }

    template <class F>
    auto map_coefficients(F&& f) const
    {
        using R = std::invoke_result_t<F, const Coeff&>;
        FormOver<R> r(frame_);
        for (auto& [w, c] : terms_)
            r.add_term(w, f(c));
        return r;
    }

    bool operator==(const FormOver& o) const { return (*this - o).is_zero(); }

    void check_frames(const FormOver& o) const
    {
        if (frame_ && o.frame_ && frame_ != o.frame_)
            throw Error("forms belong to different frames");
    }

private:
    void adopt(const FormOver& o)
    {
        check_frames(o);
        if (!frame_)
            frame_ = o.frame_;
    }

    FramePtr frame_;
    Terms terms_;

    template <class>
    friend class FormOver;
};

using Form = FormOver<Scalar>;
using ConstForm = FormOver<KElem>;

Form generator_form(const FramePtr& frame, std::size_t g);
Form scalar_form(const FramePtr& frame, const Scalar& s);
Form word_form(const FramePtr& frame, BasisWord w);

/// Coefficient-wise evaluation at a point.
ConstForm evaluate_form(const Form& x, const Point& pt);

/// Algebra homomorphism sending generator g to images[g] (nullopt keeps g).
Form substitute(const Form& x, const std::vector<std::optional<Form>>& images);

/// Apply a derivation defined by its action on coefficients and generators.
/// For odd derivations the Koszul sign (-1)^(position) is applied.
Form apply_derivation(const Form& x, const std::function<Form(const Scalar&)>& on_coefficient,
                      const std::vector<std::optional<Form>>& on_generator, bool odd);

std::string render(const Form& x);
std::string render(const ConstForm& x);

/// Wedge power of a form.
Form wedge_power(const Form& x, int n);

}  // namespace equiform

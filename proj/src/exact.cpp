#include "boxl1/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "boxl1/parallel.hpp"

namespace boxl1 {

namespace {

// Sub-index range for dimension-l faces. The success-side sum of the box
// model also admits the faces whose "ones" block is saturated, which raises
// the combinatorial cap by one; extend_box_cap selects that variant.
std::optional<std::pair<int, int>> sub_range_impl(const ModelKind& model,
                                                  const ProblemDims& dims,
                                                  Family family, int l,
                                                  bool extend_box_cap) {
    const int n = dims.n, k = dims.k;
    int lo = 0, hi = -1;
    if (model.kind == Model::Binary) {
        if (family == Family::F1) {
            lo = std::max(0, n - l - 1 - (n - k));
            hi = std::min(k - 1, n - l - 1);
        } else {
            lo = std::max(0, n - l - (n - k));
            hi = std::min(k - 1, n - l);
        }
    } else {
        const int kmu = model.k_mu;
        const int slack = n - k - kmu;
        const int cap = extend_box_cap ? kmu : kmu - 1;
        if (family == Family::F1) {
            lo = std::max(0, n - l - 1 - slack);
            hi = std::min(cap, n - l - 1);
        } else {
            lo = std::max(0, n - l - slack);
            hi = std::min(cap, n - l);
        }
    }
    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

double log_binom(int n, int r) {
    return std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0);
}

SignedLog face_count_impl(const ModelKind& model, const ProblemDims& dims,
                          const FaceIndex& face) {
    const bool binary = model.kind == Model::Binary;
    const int top1 = binary ? dims.k : model.k_mu;
    const int top2 = binary ? dims.n - dims.k : dims.n - dims.k - model.k_mu;
    const int r2 = (face.family == Family::F1) ? dims.n - face.l - 1 - face.sub
                                               : dims.n - face.l - face.sub;
    if (face.sub < 0 || face.sub > top1 || r2 < 0 || r2 > top2)
        throw InvalidFace("face_count: binomial index out of range");
    return SignedLog::from_log(1, log_binom(top1, face.sub) + log_binom(top2, r2));
}

// Evaluates every face with dimension l_start, l_start - 2, ... >= l_floor.
// Faces are listed in a fixed order (descending l, F1 before F2, ascending
// sub), evaluated concurrently into per-face slots, and reduced pairwise in
// list order, so the result is bitwise independent of the thread count.
ExactResult face_sum(const ModelKind& model, const ProblemDims& dims,
                     const QuadConfig& cfg, int l_start, int l_floor,
                     bool extend_box_cap) {
    std::vector<FaceIndex> faces;
    for (int l = l_start; l >= l_floor && l >= 0; l -= 2) {
        if (l <= dims.n - 1)
            if (auto r = sub_range_impl(model, dims, Family::F1, l, extend_box_cap))
                for (int s = r->first; s <= r->second; ++s)
                    faces.push_back({Family::F1, l, s});
        if (l <= dims.n)
            if (auto r = sub_range_impl(model, dims, Family::F2, l, extend_box_cap))
                for (int s = r->first; s <= r->second; ++s)
                    faces.push_back({Family::F2, l, s});
    }
    std::vector<FaceTermBreakdown> terms(faces.size());
    std::vector<double> errs(faces.size(), 0.0);
    parallel_for_index(faces.size(), [&](std::size_t i) {
        const FaceIndex& f = faces[i];
        const SignedLog cnt = face_count_impl(model, dims, f);
        double pint, pext;
        if (f.family == Family::F1) {
            pint = phi_int_f1(model, dims, f.l, f.sub, cfg);
            pext = phi_ext_f1(model, dims, f.l, f.sub, cfg);
        } else {
            pint = phi_int_f2(model, dims, f.l, f.sub, cfg);
            pext = phi_ext_f2(dims, f.l);
        }
        terms[i] = {f, cnt, pint, pext,
                    cnt * SignedLog::from_value(pint) * SignedLog::from_value(pext)};
        // Conservative per-term error: each quadrature-backed angle is good to
        // its absolute tolerance (prefactors stay below 2.5) plus a relative
        // part; exact angles contribute nothing.
        const double ei = 2.5 * cfg.abs_tol + cfg.rel_tol * pint;
        const double ee = (f.family == Family::F1)
                              ? 2.5 * cfg.abs_tol + cfg.rel_tol * pext
                              : 0.0;
        errs[i] = cnt.value() * (ei * pext + pint * ee + ei * ee);
    });
    std::vector<SignedLog> vals(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) vals[i] = terms[i].term;
    const SignedLog total = SignedLog::sum(vals);
    double bound = 0.0;
    for (double e : errs) bound += e;
    ExactResult out;
    out.p = 2.0 * total.value();
    out.terms = std::move(terms);
    out.quadrature_err_bound = 2.0 * bound;
    return out;
}

void enforce_unit_interval(ExactResult& r, const char* who) {
    if (r.p < 0.0) {
        if (-r.p > r.quadrature_err_bound)
            throw DomainError(std::string(who) + ": probability underflows 0 beyond the quadrature error bound");
        r.p = 0.0;
    } else if (r.p > 1.0) {
        if (r.p - 1.0 > r.quadrature_err_bound)
            throw DomainError(std::string(who) + ": probability exceeds 1 beyond the quadrature error bound");
        r.p = 1.0;
    }
}

} // namespace

std::optional<std::pair<int, int>> l_sub_range(const ModelKind& model,
                                               const ProblemDims& dims,
                                               Family family, int l) {
    validate_problem(model, dims);
    if (l < 0 || l > dims.n) return std::nullopt;
    return sub_range_impl(model, dims, family, l, false);
}

SignedLog face_count(const ModelKind& model, const ProblemDims& dims,
                     const FaceIndex& face) {
    validate_problem(model, dims);
    const auto range = l_sub_range(model, dims, face.family, face.l);
    if (!range || face.sub < range->first || face.sub > range->second)
        throw InvalidFace("face_count: index outside the valid face range");
    return face_count_impl(model, dims, face);
}

ExactResult p_err_exact(const ModelKind& model, const ProblemDims& dims,
                        const QuadConfig& cfg) {
    validate_problem(model, dims);
    cfg.validate();
    if (dims.m < 1) throw InvalidDims("p_err_exact: requires m >= 1");
    // Largest face dimension with the parity of m+1; F2 runs up to n, F1 is
    // cut off at n-1 by the per-family bound inside face_sum.
    int l_start = dims.n;
    if ((l_start - (dims.m + 1)) % 2 != 0) --l_start;
    ExactResult r = face_sum(model, dims, cfg, l_start, dims.m + 1, false);
    enforce_unit_interval(r, "p_err_exact");
    return r;
}

ExactResult p_cor_exact(const ModelKind& model, const ProblemDims& dims,
                        const QuadConfig& cfg) {
    validate_problem(model, dims);
    cfg.validate();
    const bool trivial_cone = (dims.k == 0) &&
                              (model.kind == Model::Binary || model.k_mu == 0);
    if (trivial_cone) {
        // The only candidate solution is already the vertex being tested.
        ExactResult r;
        r.p = 1.0;
        return r;
    }
    const bool extend = model.kind == Model::Box && dims.k >= 1;
    // Walk all the way down; sub-ranges empty themselves once l is too small
    // for any admissible face, and low-dimensional faces carry real mass
    // (binary k=5, m=10 has 5.9e-3 sitting at l=3).
    ExactResult r = face_sum(model, dims, cfg, dims.m - 1, 0, extend);
    enforce_unit_interval(r, "p_cor_exact");
    return r;
}

} // namespace boxl1

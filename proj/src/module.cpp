#include "lamq/module.hpp"

#include <stdexcept>

#include "lamq/parallel.hpp"

namespace lamq {

namespace {

std::vector<Scalar> column_of(const Matrix& m, std::size_t j) {
    std::vector<Scalar> v(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m.at(i, j);
    return v;
}

Matrix as_column(const Field& f, const std::vector<Scalar>& v) {
    Matrix m(f, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m.at(i, 0) = v[i];
    return m;
}

// row-major flattening of a matrix into one long row
void append_flat_row(std::vector<std::vector<Scalar>>& rows, const Matrix& m) {
    std::vector<Scalar> r;
    r.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m.at(i, j));
    rows.push_back(std::move(r));
}

}  // namespace

Module Module::zero(Algebra::Ptr alg) {
    std::vector<Matrix> act(alg->dim(), Matrix(alg->field(), 0, 0));
    return Module(std::move(alg), std::move(act));
}

Module Module::direct_sum(const std::vector<Module>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct_sum of nothing");
    const auto& alg = parts[0].algebra();
    const Field& f = parts[0].field();
    std::size_t total = 0;
    for (const auto& p : parts) {
        if (!alg->same_as(p.algebra())) throw std::invalid_argument("algebra mismatch");
        total += p.dim();
    }
    std::vector<Matrix> act;
    act.reserve(alg->dim());
    for (std::size_t b = 0; b < alg->dim(); ++b) {
        Matrix m(f, total, total);
        std::size_t off = 0;
        for (const auto& p : parts) {
            for (std::size_t i = 0; i < p.dim(); ++i)
                for (std::size_t j = 0; j < p.dim(); ++j)
                    m.at(off + i, off + j) = p.act(b).at(i, j);
            off += p.dim();
        }
        act.push_back(std::move(m));
    }
    return Module(alg, std::move(act));
}

Matrix Module::act_vec(const std::vector<Scalar>& coords) const {
    const Field& f = field();
    Matrix r(f, dim_, dim_);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (f.is_zero(coords[i])) continue;
        r = r.add(act_[i].scaled(coords[i]));
    }
    return r;
}

bool Module::check_valid() const {
    const Field& f = field();
    if (!act_[alg_->unit_index()].is_identity()) return false;
    for (std::size_t i = 0; i < alg_->dim(); ++i)
        for (std::size_t j = 0; j < alg_->dim(); ++j) {
            Matrix lhs = act_[i].mul(act_[j]);
            Matrix rhs(f, dim_, dim_);
            const auto& c = alg_->sc(i, j);
            for (std::size_t k = 0; k < alg_->dim(); ++k)
                if (!f.is_zero(c[k])) rhs = rhs.add(act_[k].scaled(c[k]));
            if (!(lhs == rhs)) return false;
        }
    return true;
}

bool ModuleMap::check() const {
    for (std::size_t b = 0; b < source.algebra()->dim(); ++b)
        if (!(matrix.mul(source.act(b)) == target.act(b).mul(matrix))) return false;
    return true;
}

std::vector<Matrix> hom_basis(const Module& m, const Module& n) {
    if (!m.algebra()->same_as(n.algebra()))
        throw std::invalid_argument("hom_basis: modules over different algebras");
    const Field& f = m.field();
    const std::size_t dm = m.dim(), dn = n.dim(), unknowns = dm * dn;
    if (unknowns == 0) return {};
    /* F act_M(b) = act_N(b) F for every basis element b; unknown F is
     * vectorized row-major.  The unit gives a trivial equation and is
     * skipped. */
    std::size_t eqs = (m.algebra()->dim() - 1) * dm * dn;
    Matrix sys(f, eqs, unknowns);
    std::size_t row = 0;
    for (std::size_t b = 0; b < m.algebra()->dim(); ++b) {
        if (b == m.algebra()->unit_index()) continue;
        const Matrix& A = m.act(b);
        const Matrix& B = n.act(b);
        for (std::size_t i = 0; i < dn; ++i)
            for (std::size_t j = 0; j < dm; ++j) {
                for (std::size_t c = 0; c < dm; ++c)
                    sys.at(row, i * dm + c) = f.add(sys.at(row, i * dm + c), A.at(c, j));
                for (std::size_t r = 0; r < dn; ++r)
                    sys.at(row, r * dm + j) = f.sub(sys.at(row, r * dm + j), B.at(i, r));
                ++row;
            }
    }
    Matrix ker = sys.kernel_basis();
    std::vector<Matrix> out;
    out.reserve(ker.cols());
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        Matrix h(f, dn, dm);
        for (std::size_t i = 0; i < dn; ++i)
            for (std::size_t j = 0; j < dm; ++j) h.at(i, j) = ker.at(i * dm + j, c);
        out.push_back(std::move(h));
    }
    return out;
}

IsoResult is_isomorphic(const Module& m, const Module& n, long long budget) {
    if (!m.algebra()->same_as(n.algebra()))
        throw std::invalid_argument("is_isomorphic: modules over different algebras");
    const Field& f = m.field();
    if (m.dim() != n.dim())
        return {IsoResult::Verdict::no, std::nullopt, "dimension mismatch"};
    const std::size_t d = m.dim();
    if (d == 0) return {IsoResult::Verdict::yes, Matrix(f, 0, 0), "zero modules"};
    std::vector<Matrix> homs = hom_basis(m, n);
    const std::size_t t = homs.size();
    if (t == 0) return {IsoResult::Verdict::no, std::nullopt, "Hom space is zero"};

    /* Sample values: {0..d} suffices for the determinant polynomial (degree
     * <= d in each variable); over F_p with p <= d the whole field is used
     * instead, which decides isomorphism over F_p exactly. */
    std::vector<Scalar> samples;
    long long nvals;
    if (f.is_rationals() || f.characteristic() > (long long)d) {
        nvals = (long long)d + 1;
    } else {
        nvals = f.characteristic();
    }
    for (long long v = 0; v < nvals; ++v) samples.push_back(f.from_long(v));

    // total grid size, saturating at budget+1
    unsigned long long total = 1;
    bool over = false;
    for (std::size_t i = 0; i < t && !over; ++i) {
        total *= (unsigned long long)nvals;
        if (total > (unsigned long long)budget) over = true;
    }
    unsigned long long scan = over ? (unsigned long long)budget : total;

    auto combo_at = [&](unsigned long long idx) {
        Matrix c(f, n.dim(), m.dim());
        unsigned long long rest = idx;
        for (std::size_t i = 0; i < t; ++i) {
            long long digit = (long long)(rest % (unsigned long long)nvals);
            rest /= (unsigned long long)nvals;
            if (digit) c = c.add(homs[i].scaled(samples[(std::size_t)digit]));
        }
        return c;
    };

    std::size_t hit = parallel_find_min_index((std::size_t)scan, [&](std::size_t idx) {
        return !f.is_zero(combo_at(idx).det());
    });

    if (hit != npos_index) {
        Matrix w = combo_at(hit);
        return {IsoResult::Verdict::yes, w, "invertible intertwiner"};
    }
    if (over)
        return {IsoResult::Verdict::undecided, std::nullopt,
                "certification grid exceeds budget"};
    return {IsoResult::Verdict::no, std::nullopt,
            "determinant vanishes on the whole certification grid"};
}

SubmoduleResult submodule(const Module& m, const std::vector<std::vector<Scalar>>& gens) {
    const Field& f = m.field();
    Matrix g(f, m.dim(), gens.size());
    for (std::size_t c = 0; c < gens.size(); ++c) {
        if (gens[c].size() != m.dim()) throw std::invalid_argument("generator dimension");
        for (std::size_t i = 0; i < m.dim(); ++i) g.at(i, c) = gens[c][i];
    }
    return submodule_span(m, g);
}

SubmoduleResult submodule_span(const Module& m, const Matrix& subspace_basis) {
    Matrix basis = subspace_basis.column_space_basis();
    while (true) {
        Matrix stacked = basis;
        for (std::size_t b = 0; b < m.algebra()->dim(); ++b) {
            if (b == m.algebra()->unit_index()) continue;
            stacked = stacked.hstack(m.act(b).mul(basis));
        }
        Matrix closed = stacked.column_space_basis();
        if (closed.cols() == basis.cols()) { basis = closed; break; }
        basis = closed;
    }
    std::vector<Matrix> act;
    act.reserve(m.algebra()->dim());
    for (std::size_t b = 0; b < m.algebra()->dim(); ++b) {
        auto sol = basis.solve(m.act(b).mul(basis));
        if (!sol) throw std::logic_error("submodule closure failed");
        act.push_back(*sol);
    }
    return {Module(m.algebra(), std::move(act)), basis};
}

QuotientResult quotient(const Module& m, const Matrix& sub_basis) {
    const Field& f = m.field();
    const std::size_t d = m.dim(), s = sub_basis.cols();
    // the subspace must be action-closed, otherwise the quotient is garbage
    for (std::size_t b = 0; b < m.algebra()->dim(); ++b)
        if (stacked_rank(sub_basis, m.act(b).mul(sub_basis)) != s)
            throw std::invalid_argument("quotient by a non-submodule");
    // complete to a basis with standard unit vectors, first-fit
    Matrix p = sub_basis;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < d && p.cols() < d; ++i) {
        Matrix e(f, d, 1);
        e.at(i, 0) = f.one();
        Matrix cand = p.hstack(e);
        if (cand.rank() == p.cols() + 1) {
            p = cand;
            chosen.push_back(i);
        }
    }
    if (p.cols() != d) throw std::logic_error("dependent submodule basis");
    Matrix pinv = *p.inverse();
    Matrix proj(f, d - s, d);
    for (std::size_t i = 0; i < d - s; ++i)
        for (std::size_t j = 0; j < d; ++j) proj.at(i, j) = pinv.at(s + i, j);
    Matrix section(f, d, d - s);
    for (std::size_t c = 0; c < chosen.size(); ++c) section.at(chosen[c], c) = f.one();
    std::vector<Matrix> act;
    act.reserve(m.algebra()->dim());
    for (std::size_t b = 0; b < m.algebra()->dim(); ++b)
        act.push_back(proj.mul(m.act(b)).mul(section));
    return {Module(m.algebra(), std::move(act)), proj, section};
}

Matrix radical_of(const Module& m) {
    Matrix rad = m.algebra()->radical_basis();
    Matrix stacked(m.field(), m.dim(), 0);
    for (std::size_t c = 0; c < rad.cols(); ++c)
        stacked = stacked.hstack(m.act_vec(column_of(rad, c)));
    return stacked.column_space_basis();
}

Matrix socle_of(const Module& m) {
    Matrix rad = m.algebra()->radical_basis();
    Matrix stacked(m.field(), 0, m.dim());
    for (std::size_t c = 0; c < rad.cols(); ++c) {
        Matrix a = m.act_vec(column_of(rad, c));
        stacked = stacked.rows() ? stacked.vstack(a) : a;
    }
    return stacked.kernel_basis();
}

QuotientResult top_of(const Module& m) { return quotient(m, radical_of(m)); }

std::size_t loewy_length(const Module& m) {
    Matrix layer = Matrix::identity(m.field(), m.dim());
    Matrix rad = m.algebra()->radical_basis();
    std::size_t len = 0;
    while (layer.cols() > 0) {
        ++len;
        Matrix next(m.field(), m.dim(), 0);
        for (std::size_t c = 0; c < rad.cols(); ++c)
            next = next.hstack(m.act_vec(column_of(rad, c)).mul(layer));
        layer = next.column_space_basis();
    }
    return len;
}

bool is_local(const Module& m) { return m.dim() > 0 && top_of(m).quot.dim() == 1; }

CoverResult projective_cover(const Module& m) {
    const Field& f = m.field();
    const auto& alg = m.algebra();
    const std::size_t da = alg->dim();
    QuotientResult top = top_of(m);
    const std::size_t t = top.quot.dim();
    if (t == 0) return {Module::zero(alg), Matrix(f, 0, 0), 0};
    std::vector<Module> copies(t, alg->regular_left());
    Module p = Module::direct_sum(copies);
    Matrix map(f, m.dim(), da * t);
    for (std::size_t i = 0; i < t; ++i) {
        std::vector<Scalar> gen = column_of(top.section, i);
        for (std::size_t j = 0; j < da; ++j) {
            Matrix img = m.act(j).mul(as_column(f, gen));
            for (std::size_t r = 0; r < m.dim(); ++r) map.at(r, i * da + j) = img.at(r, 0);
        }
    }
    if (map.rank() != m.dim()) throw std::logic_error("cover map not surjective");
    // minimality: the kernel must sit inside rad(P)
    Matrix ker = map.kernel_basis();
    Matrix radp = radical_of(p);
    if (stacked_rank(radp, ker) != radp.cols())
        throw std::logic_error("cover kernel escapes the radical");
    return {std::move(p), std::move(map), t};
}

SyzygyResult syzygy(const Module& m) {
    CoverResult cover = projective_cover(m);
    if (cover.copies == 0)
        return {Module::zero(m.algebra()), Matrix(m.field(), 0, 0), std::move(cover)};
    Matrix ker = cover.map.kernel_basis();
    SubmoduleResult sub = submodule_span(cover.proj_mod, ker);
    return {std::move(sub.sub), std::move(sub.basis), std::move(cover)};
}

Module syzygy_iterate(const Module& m, int t) {
    Module x = m;
    for (int s = 0; s < t; ++s) x = syzygy(x).syz;
    return x;
}

bool is_left_approximation(const Module& m, const std::vector<Matrix>& homs,
                           const std::vector<std::size_t>& kept) {
    if (homs.empty()) return true;
    const Field& f = m.field();
    const auto& alg = m.algebra();
    const std::size_t da = alg->dim(), dm = m.dim();
    /* h factors through (f_i)_{i in kept} iff  sum_i f_i(m_j) * lambda_i =
     * h(m_j) is solvable for algebra elements lambda_i; one multi-RHS solve
     * covers the whole Hom basis at once. */
    Matrix sys(f, da * dm, da * kept.size());
    for (std::size_t ci = 0; ci < kept.size(); ++ci) {
        const Matrix& fi = homs[kept[ci]];
        for (std::size_t j = 0; j < dm; ++j) {
            Matrix L = alg->left_mult(column_of(fi, j));
            for (std::size_t r = 0; r < da; ++r)
                for (std::size_t c = 0; c < da; ++c)
                    sys.at(j * da + r, ci * da + c) = L.at(r, c);
        }
    }
    Matrix rhs(f, da * dm, homs.size());
    for (std::size_t h = 0; h < homs.size(); ++h)
        for (std::size_t j = 0; j < dm; ++j)
            for (std::size_t r = 0; r < da; ++r)
                rhs.at(j * da + r, h) = homs[h].at(r, j);
    return sys.solve(rhs).has_value();
}

ApproxResult left_approximation_minimal(const Module& m) {
    const auto& alg = m.algebra();
    const Field& f = m.field();
    Module reg = alg->regular_left();
    std::vector<Matrix> homs = hom_basis(m, reg);
    std::vector<std::size_t> kept(homs.size());
    for (std::size_t i = 0; i < kept.size(); ++i) kept[i] = i;
    /* Greedy deletion in ascending index order.  The approximation property
     * is monotone under adding coordinates, so one pass leaves a coordinate-
     * irredundant approximation; minimal approximations are unique up to
     * isomorphism, which is all downstream code relies on. */
    for (std::size_t i = 0; i < homs.size(); ++i) {
        std::vector<std::size_t> trial;
        for (auto k : kept)
            if (k != i) trial.push_back(k);
        if (trial.size() != kept.size() && is_left_approximation(m, homs, trial))
            kept = std::move(trial);
    }
    const std::size_t t = kept.size(), da = alg->dim();
    Matrix map(f, da * t, m.dim());
    for (std::size_t ci = 0; ci < t; ++ci)
        for (std::size_t r = 0; r < da; ++r)
            for (std::size_t j = 0; j < m.dim(); ++j)
                map.at(ci * da + r, j) = homs[kept[ci]].at(r, j);
    ApproxResult res{std::move(map), t, std::move(kept), homs.size(), false};
    res.injective = res.map.rank() == m.dim();
    return res;
}

CosyzygyResult cosyzygy(const Module& m) {
    const auto& alg = m.algebra();
    ApproxResult approx = left_approximation_minimal(m);
    if (approx.copies == 0) {
        Module z = Module::zero(alg);
        return {std::move(z), std::move(approx), Matrix(m.field(), 0, 0)};
    }
    std::vector<Module> copies(approx.copies, alg->regular_left());
    Module p = Module::direct_sum(copies);
    Matrix image = approx.map.column_space_basis();
    QuotientResult q = quotient(p, image);
    return {std::move(q.quot), std::move(approx), std::move(q.proj)};
}

Module cosyzygy_iterate(const Module& m, int t) {
    Module x = m;
    for (int s = 0; s < t; ++s) x = cosyzygy(x).cosyz;
    return x;
}

PredicateVerdict is_torsionless(const Module& m) {
    if (m.dim() == 0) return {true, "zero module"};
    Module reg = m.algebra()->regular_left();
    std::vector<Matrix> homs = hom_basis(m, reg);
    Matrix stacked(m.field(), 0, m.dim());
    for (const auto& h : homs) stacked = stacked.rows() ? stacked.vstack(h) : h;
    std::size_t corank = homs.empty() ? m.dim() : m.dim() - stacked.rank();
    if (corank == 0) return {true, "kernels of all maps to the regular module intersect in 0"};
    return {false, "joint kernel of Hom(M,A) has dimension " + std::to_string(corank)};
}

std::size_t ext_dim(const Module& m, int i) {
    if (i < 1) throw std::invalid_argument("ext_dim needs i >= 1");
    Module x = syzygy_iterate(m, i - 1);
    SyzygyResult s = syzygy(x);
    if (s.syz.dim() == 0) return 0;
    const auto& alg = m.algebra();
    const Field& f = m.field();
    const std::size_t da = alg->dim(), d1 = s.syz.dim(), t = s.cover.copies;
    std::vector<Matrix> homs = hom_basis(s.syz, alg->regular_left());
    /* Hom(A^t, A) is spanned by coordinatewise right multiplications; their
     * restrictions along the kernel inclusion span the image of the
     * restriction map, and Ext^1 is its cokernel. */
    std::vector<std::vector<Scalar>> rows;
    rows.reserve(t * da);
    for (std::size_t copy = 0; copy < t; ++copy) {
        Matrix block(f, da, d1);
        for (std::size_t r = 0; r < da; ++r)
            for (std::size_t c = 0; c < d1; ++c) block.at(r, c) = s.incl.at(copy * da + r, c);
        for (std::size_t k = 0; k < da; ++k)
            append_flat_row(rows, alg->right_mult(alg->coord_vec(k)).mul(block));
    }
    std::size_t rank = Matrix::from_rows(f, rows).rank();
    if (homs.size() < rank) throw std::logic_error("restriction rank exceeds Hom dimension");
    return homs.size() - rank;
}

PredicateVerdict is_extensionless(const Module& m) {
    std::size_t e = ext_dim(m, 1);
    if (e == 0) return {true, "Ext^1(M,A) = 0"};
    return {false, "dim Ext^1(M,A) = " + std::to_string(e)};
}

PredicateVerdict is_reflexive(const Module& m) {
    PredicateVerdict tl = is_torsionless(m);
    bool primary;
    std::string why;
    if (!tl.value) {
        primary = false;
        why = "not torsionless";
    } else {
        PredicateVerdict tl2 = is_torsionless(cosyzygy(m).cosyz);
        primary = tl2.value;
        why = tl2.value ? "torsionless with torsionless cosyzygy"
                        : "cosyzygy is not torsionless";
    }
    bool secondary = evaluation_bijective(m);
    if (primary != secondary)
        throw std::logic_error("reflexivity routes disagree: " + why);
    return {primary, why};
}

BoundedVerdict semi_gp_up_to(const Module& m, int depth) {
    Module x = m;
    for (int t = 0; t <= depth; ++t) {
        if (ext_dim(x, 1) != 0) return {false, depth, t};
        if (t < depth) x = syzygy(x).syz;
    }
    return {true, depth, -1};
}

BoundedVerdict inf_tf_up_to(const Module& m, int depth) {
    Module x = m;
    for (int t = 0; t <= depth; ++t) {
        if (!is_torsionless(x).value) return {false, depth, t};
        Module next = cosyzygy(x).cosyz;
        if (!is_torsionless(next).value) return {false, depth, t};  // x not reflexive
        if (!evaluation_bijective(x))
            throw std::logic_error("reflexivity routes disagree along cosyzygies");
        if (t < depth) x = std::move(next);
    }
    return {true, depth, -1};
}

namespace {

struct DualData {
    Module mod;
    std::vector<Matrix> homs;  // basis of Hom(M, A), maps dimA x dimM
    Matrix span;               // vectorized homs as columns
};

DualData dual_with_basis(const Module& m) {
    const auto& alg = m.algebra();
    const Field& f = m.field();
    const std::size_t da = alg->dim();
    Module reg = alg->regular_left();
    std::vector<Matrix> homs = hom_basis(m, reg);
    const std::size_t r = homs.size();
    Matrix span(f, da * m.dim(), r);
    for (std::size_t s = 0; s < r; ++s)
        for (std::size_t i = 0; i < da; ++i)
            for (std::size_t j = 0; j < m.dim(); ++j)
                span.at(i * m.dim() + j, s) = homs[s].at(i, j);
    Algebra::Ptr op = Algebra::opposite(alg);
    std::vector<Matrix> act;
    act.reserve(da);
    for (std::size_t b = 0; b < da; ++b) {
        // (f . b)(m) = f(m) * b: postcompose with right multiplication
        Matrix rb = alg->right_mult(alg->coord_vec(b));
        Matrix cols(f, da * m.dim(), r);
        for (std::size_t s = 0; s < r; ++s) {
            Matrix img = rb.mul(homs[s]);
            for (std::size_t i = 0; i < da; ++i)
                for (std::size_t j = 0; j < m.dim(); ++j)
                    cols.at(i * m.dim() + j, s) = img.at(i, j);
        }
        auto sol = span.solve(cols);
        if (!sol) throw std::logic_error("dual action does not preserve the Hom space");
        act.push_back(*sol);
    }
    return {Module(op, std::move(act)), std::move(homs), std::move(span)};
}

}  // namespace

Module dual(const Module& m) { return dual_with_basis(m).mod; }

Module transpose(const Module& m) {
    const auto& alg = m.algebra();
    const Field& f = m.field();
    const std::size_t da = alg->dim();
    Algebra::Ptr op = Algebra::opposite(alg);
    SyzygyResult s = syzygy(m);
    CoverResult c1 = projective_cover(s.syz);
    const std::size_t t0 = s.cover.copies, t1 = c1.copies;
    if (t1 == 0) return Module::zero(op);
    // composite P_1 -> Omega M -> P_0 in plain coordinates
    Matrix g = s.incl.mul(c1.map);
    /* Dualizing Hom(-, A) turns g into left multiplication by its entries;
     * Tr M is the cokernel inside (A^op)^t1. */
    Matrix tmat(f, da * t1, da * t0);
    for (std::size_t j = 0; j < t1; ++j) {
        std::size_t unit_col = j * da + alg->unit_index();
        for (std::size_t i = 0; i < t0; ++i) {
            std::vector<Scalar> u(da);
            for (std::size_t r = 0; r < da; ++r) u[r] = g.at(i * da + r, unit_col);
            Matrix L = alg->left_mult(u);
            for (std::size_t r = 0; r < da; ++r)
                for (std::size_t c = 0; c < da; ++c)
                    tmat.at(j * da + r, i * da + c) = L.at(r, c);
        }
    }
    std::vector<Module> copies(t1, op->regular_left());
    Module ambient = Module::direct_sum(copies);
    QuotientResult q = quotient(ambient, tmat.column_space_basis());
    return q.quot;
}

Matrix evaluation_map(const Module& m) {
    const Field& f = m.field();
    DualData d1 = dual_with_basis(m);
    DualData d2 = dual_with_basis(d1.mod);
    const std::size_t r1 = d1.homs.size();
    // ev(m_j): f_s -> f_s(m_j), expressed in the double-dual basis
    Matrix ev(f, d2.mod.dim(), m.dim());
    if (d2.mod.dim() == 0) return ev;
    Matrix rhs(f, d2.span.rows(), m.dim());
    const std::size_t da = m.algebra()->dim();
    for (std::size_t j = 0; j < m.dim(); ++j) {
        // matrix of ev(m_j) as a map M* -> A, column s = f_s(m_j)
        for (std::size_t s = 0; s < r1; ++s)
            for (std::size_t i = 0; i < da; ++i)
                rhs.at(i * r1 + s, j) = d1.homs[s].at(i, j);
    }
    auto sol = d2.span.solve(rhs);
    if (!sol) throw std::logic_error("evaluation image escapes the double dual");
    return *sol;
}

bool evaluation_bijective(const Module& m) {
    DualData d1 = dual_with_basis(m);
    DualData d2 = dual_with_basis(d1.mod);
    if (d2.mod.dim() != m.dim()) return false;
    if (m.dim() == 0) return true;
    Matrix ev = evaluation_map(m);
    return ev.inverse().has_value();
}

PredicateVerdict is_direct_sum_of(const Module& m, const std::vector<Module>& parts,
                                  long long budget) {
    Module d = parts.empty() ? Module::zero(m.algebra()) : Module::direct_sum(parts);
    IsoResult iso = is_isomorphic(m, d, budget);
    if (iso.verdict == IsoResult::Verdict::undecided)
        throw std::runtime_error("direct sum test undecided: " + iso.note);
    if (iso.yes()) return {true, "isomorphic to the stated direct sum"};
    return {false, iso.note};
}

namespace {

struct ScanShape {
    std::size_t n, d;
    long long p;
    std::vector<std::vector<std::size_t>> combos;      // pivot column sets
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> free_slots;
    std::vector<unsigned long long> counts;            // p^{#free} per combo
    std::vector<unsigned long long> offsets;           // prefix sums
    unsigned long long total = 0;
};

ScanShape scan_shape(const Module& m, std::size_t d, unsigned long long budget) {
    if (m.field().is_rationals())
        throw std::invalid_argument("exhaustive subspace scan needs a finite field");
    ScanShape sh;
    sh.n = m.dim();
    sh.d = d;
    sh.p = m.field().characteristic();
    if (d > sh.n) return sh;
    std::vector<std::size_t> combo(d);
    for (std::size_t i = 0; i < d; ++i) combo[i] = i;
    while (true) {
        std::vector<bool> is_piv(sh.n, false);
        for (auto c : combo) is_piv[c] = true;
        std::vector<std::pair<std::size_t, std::size_t>> slots;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = combo[i] + 1; j < sh.n; ++j)
                if (!is_piv[j]) slots.emplace_back(i, j);
        unsigned long long cnt = 1;
        for (std::size_t s = 0; s < slots.size(); ++s) cnt *= (unsigned long long)sh.p;
        sh.combos.push_back(combo);
        sh.free_slots.push_back(std::move(slots));
        sh.offsets.push_back(sh.total);
        sh.counts.push_back(cnt);
        sh.total += cnt;
        if (sh.total > budget)
            throw std::runtime_error("subspace scan exceeds budget");
        // next combination in lexicographic order
        std::size_t i = d;
        while (i > 0 && combo[i - 1] == sh.n - d + i - 1) --i;
        if (i == 0) break;
        ++combo[i - 1];
        for (std::size_t j = i; j < d; ++j) combo[j] = combo[j - 1] + 1;
    }
    return sh;
}

Matrix basis_at(const ScanShape& sh, const Module& m, unsigned long long flat) {
    // locate the combo block
    std::size_t lo = 0, hi = sh.combos.size();
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (sh.offsets[mid] <= flat) lo = mid; else hi = mid;
    }
    unsigned long long rest = flat - sh.offsets[lo];
    const Field& f = m.field();
    Matrix b(f, sh.n, sh.d);
    for (std::size_t i = 0; i < sh.d; ++i) b.at(sh.combos[lo][i], i) = f.one();
    for (const auto& [row, col] : sh.free_slots[lo]) {
        long long digit = (long long)(rest % (unsigned long long)sh.p);
        rest /= (unsigned long long)sh.p;
        b.at(col, row) = f.from_long(digit);
    }
    return b;
}

bool action_closed(const Module& m, const Matrix& b) {
    for (std::size_t g = 0; g < m.algebra()->dim(); ++g) {
        if (g == m.algebra()->unit_index()) continue;
        if (stacked_rank(b, m.act(g).mul(b)) != b.cols()) return false;
    }
    return true;
}

}  // namespace

SubspaceScan enumerate_submodules_serial(const Module& m, std::size_t d,
                                         unsigned long long budget) {
    SubspaceScan out;
    if (d == 0) {
        out.submodule_bases.push_back(Matrix(m.field(), m.dim(), 0));
        out.inspected = 1;
        return out;
    }
    ScanShape sh = scan_shape(m, d, budget);
    out.inspected = sh.total;
    for (unsigned long long i = 0; i < sh.total; ++i) {
        Matrix b = basis_at(sh, m, i);
        if (action_closed(m, b)) out.submodule_bases.push_back(std::move(b));
    }
    return out;
}

SubspaceScan enumerate_submodules(const Module& m, std::size_t d,
                                  unsigned long long budget) {
    SubspaceScan out;
    if (d == 0) {
        out.submodule_bases.push_back(Matrix(m.field(), m.dim(), 0));
        out.inspected = 1;
        return out;
    }
    ScanShape sh = scan_shape(m, d, budget);
    out.inspected = sh.total;
    std::vector<char> hit(sh.total, 0);
    parallel_for((std::size_t)sh.total, [&](std::size_t i) {
        if (action_closed(m, basis_at(sh, m, i))) hit[i] = 1;
    });
    for (unsigned long long i = 0; i < sh.total; ++i)
        if (hit[i]) out.submodule_bases.push_back(basis_at(sh, m, i));
    return out;
}

}  // namespace lamq

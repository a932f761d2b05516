#include "flipk/presented.hpp"

#include "flipk/errors.hpp"

namespace flipk {

Int mod_reduce(const Int& v, const Int& m) {
    if (m == 0) return v;
    Int r = v % m;
    if (r < 0) r += m;
    return r;
}

namespace {

Decomposition decomposition_from_moduli(const IntVec& moduli) {
    Decomposition dec;
    for (const Int& m : moduli) {
        if (m == 0) {
            dec.add(FreeZ{});
            continue;
        }
        for (const auto& [p, e] : factorize(m)) dec.add(make_cyclic(p, e));
    }
    return dec;
}

} // namespace

SubquotientGroup::SubquotientGroup(IntMatrix kernel_basis, const IntMatrix& sub_gens)
    : B1_(std::move(kernel_basis)), B1snf_(smith_normal_form(B1_)) {
    if (sub_gens.rows() != B1_.rows())
        throw InternalError("subquotient: ambient dimensions disagree");
    const std::size_t k = B1_.cols();
    // every sublattice generator must lie in K; write them as coefficient columns
    IntMatrix C(k, sub_gens.cols());
    for (std::size_t j = 0; j < sub_gens.cols(); ++j) {
        auto w = solve_cols(B1snf_, sub_gens.col(j));
        if (!w) throw InternalError("subquotient: relation outside the subgroup");
        C.set_col(j, *w);
    }
    SmithForm s = smith_normal_form(C);
    U_ = s.U;
    const auto diag = s.diagonal();
    IntVec all_moduli(k, Int(0));
    for (std::size_t i = 0; i < diag.size() && i < k; ++i) all_moduli[i] = diag[i];
    IntMatrix ambient = B1_.mul(s.Uinv); // columns = transformed generators, in ambient coords
    for (std::size_t i = 0; i < k; ++i) {
        if (all_moduli[i] == 1) continue;
        kept_.push_back(i);
        moduli_.push_back(all_moduli[i]);
    }
    basis_ = IntMatrix::zero(B1_.rows(), kept_.size());
    for (std::size_t j = 0; j < kept_.size(); ++j) basis_.set_col(j, ambient.col(kept_[j]));
    dec_ = decomposition_from_moduli(moduli_);
}

IntVec SubquotientGroup::coords(const IntVec& ambient) const {
    auto w = solve_cols(B1snf_, ambient);
    if (!w) throw InternalError("subquotient: vector outside the subgroup");
    IntVec y = U_.mul_vec(*w);
    IntVec out(kept_.size());
    for (std::size_t j = 0; j < kept_.size(); ++j) out[j] = mod_reduce(y[kept_[j]], moduli_[j]);
    return out;
}

DiagGroup diagonalize(const PresentationMatrix& M) {
    const std::size_t n = M.generators();
    SmithForm s = smith_normal_form(M.rel.transposed());
    DiagGroup dg;
    dg.gens = n;
    dg.to_diag = s.U;
    dg.from_diag = s.Uinv;
    const auto diag = s.diagonal();
    IntVec all_moduli(n, Int(0));
    for (std::size_t i = 0; i < diag.size() && i < n; ++i) all_moduli[i] = diag[i];
    for (std::size_t i = 0; i < n; ++i) {
        if (all_moduli[i] == 1) continue;
        dg.kept.push_back(i);
        dg.moduli.push_back(all_moduli[i]);
    }
    dg.dec = decomposition_from_moduli(dg.moduli);
    return dg;
}

IntMatrix diag_map(const DiagGroup& target, const IntMatrix& F, const DiagGroup& source) {
    if (F.rows() != target.gens || F.cols() != source.gens)
        throw InternalError("diag_map: shape mismatch");
    IntMatrix full = target.to_diag.mul(F).mul(source.from_diag);
    IntMatrix out(target.kept.size(), source.kept.size());
    for (std::size_t r = 0; r < target.kept.size(); ++r)
        for (std::size_t c = 0; c < source.kept.size(); ++c)
            out(r, c) = mod_reduce(full(target.kept[r], source.kept[c]), target.moduli[r]);
    return out;
}

bool surjective_mod(const IntMatrix& F, const IntVec& target_moduli) {
    const std::size_t k = F.rows();
    if (target_moduli.size() != k) throw InternalError("surjective_mod: moduli mismatch");
    std::vector<std::size_t> torsion;
    for (std::size_t i = 0; i < k; ++i)
        if (target_moduli[i] != 0) torsion.push_back(i);
    IntMatrix rel = IntMatrix::zero(k, torsion.size());
    for (std::size_t j = 0; j < torsion.size(); ++j) rel(torsion[j], j) = target_moduli[torsion[j]];
    SmithForm s = smith_normal_form(F.hstack(rel));
    const auto diag = s.diagonal();
    if (diag.size() < k) return false;
    for (std::size_t i = 0; i < k; ++i)
        if (diag[i] != 1) return false;
    return true;
}

bool induces_isomorphism(const IntMatrix& F, const IntVec& target_moduli,
                         const Decomposition& source_dec, const Decomposition& target_dec) {
    return source_dec == target_dec && surjective_mod(F, target_moduli);
}

bool is_identity_mod(const IntMatrix& F, const IntVec& moduli) {
    if (F.rows() != F.cols() || F.rows() != moduli.size())
        throw InternalError("is_identity_mod: shape mismatch");
    for (std::size_t i = 0; i < F.rows(); ++i)
        for (std::size_t j = 0; j < F.cols(); ++j) {
            Int want = (i == j) ? Int(1) : Int(0);
            if (mod_reduce(F(i, j) - want, moduli[i]) != 0) return false;
        }
    return true;
}

} // namespace flipk

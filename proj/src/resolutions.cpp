#include "flipk/resolutions.hpp"

#include <functional>
#include <random>

#include "flipk/errors.hpp"

namespace flipk {

FreeResolution free_resolution(const PresentationMatrix& M) {
    IntMatrix incl = hnf_cols(M.rel.transposed());
    SmithForm snf = smith_normal_form(incl);
    return FreeResolution{M, std::move(incl), std::move(snf)};
}

std::optional<IntVec> solve_kron_left(const SmithForm& B, std::size_t b_rows,
                                      std::size_t b_cols, const IntVec& v, std::size_t n) {
    if (v.size() != n * b_rows) throw InternalError("solve_kron_left: size mismatch");
    IntVec out(n * b_cols);
    IntVec block(b_rows);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < b_rows; ++r) block[r] = v[i * b_rows + r];
        auto w = solve_cols(B, block);
        if (!w) return std::nullopt;
        for (std::size_t c = 0; c < b_cols; ++c) out[i * b_cols + c] = (*w)[c];
    }
    return out;
}

std::optional<IntVec> solve_kron_right(const SmithForm& B, std::size_t b_rows,
                                       std::size_t b_cols, const IntVec& v, std::size_t n) {
    if (v.size() != b_rows * n) throw InternalError("solve_kron_right: size mismatch");
    IntVec out(b_cols * n);
    IntVec slice(b_rows);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t r = 0; r < b_rows; ++r) slice[r] = v[r * n + j];
        auto w = solve_cols(B, slice);
        if (!w) return std::nullopt;
        for (std::size_t c = 0; c < b_cols; ++c) out[c * n + j] = (*w)[c];
    }
    return out;
}

IntVec transpose_factors(const IntVec& v, std::size_t m, std::size_t n) {
    if (v.size() != m * n) throw InternalError("transpose_factors: size mismatch");
    IntVec out(m * n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < n; ++k) out[k * m + i] = v[i * n + k];
    return out;
}

LeftTor ltor(const PresentationMatrix& G, const PresentationMatrix& H) {
    FreeResolution res = free_resolution(G);
    const std::size_t g = G.generators(), h = H.generators(), r = res.P_rank();
    IntMatrix F = kron(res.inclusion, IntMatrix::identity(h));
    IntMatrix target_rel = kron(IntMatrix::identity(g), H.rel.transposed());
    IntMatrix source_rel = kron(IntMatrix::identity(r), H.rel.transposed());
    IntMatrix K = preimage_lattice(F, target_rel);
    return LeftTor{std::move(res), G, H, SubquotientGroup(std::move(K), source_rel)};
}

RightTor rtor(const PresentationMatrix& G, const PresentationMatrix& H) {
    FreeResolution res = free_resolution(H);
    const std::size_t g = G.generators(), h = H.generators(), r = res.P_rank();
    IntMatrix F = kron(IntMatrix::identity(g), res.inclusion);
    IntMatrix target_rel = kron(G.rel.transposed(), IntMatrix::identity(h));
    IntMatrix source_rel = kron(G.rel.transposed(), IntMatrix::identity(r));
    IntMatrix K = preimage_lattice(F, target_rel);
    return RightTor{std::move(res), G, H, SubquotientGroup(std::move(K), source_rel)};
}

TorMatrix compose(const TorMatrix& second, const TorMatrix& first) {
    if (second.col_moduli.size() != first.row_moduli.size())
        throw InternalError("compose: shape mismatch");
    IntMatrix m = second.mat.mul(first.mat);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod_reduce(m(i, j), second.row_moduli[i]);
    return TorMatrix{std::move(m), second.row_moduli, first.col_moduli};
}

bool tor_matrix_is_identity(const TorMatrix& m) {
    return m.row_moduli.size() == m.col_moduli.size() && is_identity_mod(m.mat, m.row_moduli);
}

namespace {

// map each kernel generator through `image` and certify the landing class
IntMatrix kernel_map(const SubquotientGroup& source, const SubquotientGroup& target,
                     const std::function<IntVec(const IntVec&)>& image) {
    IntMatrix out(target.generator_count(), source.generator_count());
    for (std::size_t j = 0; j < source.generator_count(); ++j) {
        IntVec y = image(source.basis().col(j));
        out.set_col(j, target.coords(y));
    }
    return out;
}

IntVec add_lattice_noise(const IntVec& x, const IntMatrix& lattice, std::uint64_t seed,
                         std::size_t column) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (column + 1)));
    std::uniform_int_distribution<int> coeff(-3, 3);
    IntVec r(lattice.cols());
    for (auto& c : r) c = coeff(rng);
    IntVec noise = lattice.mul_vec(r);
    IntVec out = x;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += noise[i];
    return out;
}

} // namespace

TorMatrix ltor_rtor_iso(const PresentationMatrix& G, const PresentationMatrix& H) {
    LeftTor lt = ltor(G, H);
    RightTor rt = rtor(G, H);
    const std::size_t g = G.generators(), h = H.generators();
    const IntMatrix& AG = lt.res.inclusion;
    const IntMatrix& AH = rt.res.inclusion;
    IntMatrix AGIh = kron(AG, IntMatrix::identity(h));
    SmithForm MGt_snf = smith_normal_form(G.rel.transposed());

    auto chase = [&](const IntVec& x) {
        IntVec v = AGIh.mul_vec(x);
        auto w = solve_kron_left(rt.res.inclusion_snf, h, rt.res.P_rank(), v, g);
        if (!w) throw InternalError("ltor_rtor_iso: lift across the right resolution failed");
        // certify: the common image must lie in the relation lattice of G ⊗ Q(H)
        if (!solve_kron_right(MGt_snf, g, G.relations(), v, h))
            throw InternalError("ltor_rtor_iso: chase image left the relation lattice");
        return *w;
    };

    TorMatrix out{kernel_map(lt.kernel, rt.kernel, chase), rt.kernel.moduli(), lt.kernel.moduli()};
    if (!induces_isomorphism(out.mat, out.row_moduli, lt.value(), rt.value()))
        throw InternalError("ltor_rtor_iso: comparison map is not an isomorphism");
    return out;
}

EtaContext make_eta_context(const PresentationMatrix& G, const PresentationMatrix& H) {
    LeftTor lt = ltor(G, H);
    LeftTor swapped = ltor(H, G);
    const std::size_t g = G.generators(), h = H.generators();
    IntMatrix AGIh = kron(lt.res.inclusion, IntMatrix::identity(h));
    IntMatrix AHIg = kron(swapped.res.inclusion, IntMatrix::identity(g));
    IntMatrix source_rel = kron(IntMatrix::identity(lt.res.P_rank()), H.rel.transposed());
    SmithForm MGt_snf = smith_normal_form(G.rel.transposed());
    return EtaContext{G,           H,
                      std::move(lt),         std::move(swapped),
                      std::move(AGIh),       std::move(AHIg),
                      std::move(source_rel), std::move(MGt_snf)};
}

TorMatrix eta(const EtaContext& ctx, std::uint64_t lift_seed) {
    const std::size_t g = ctx.G.generators(), h = ctx.H.generators();
    const std::size_t rH = ctx.swapped.res.P_rank();
    std::size_t column = 0;

    auto chase = [&](const IntVec& x0) {
        IntVec x = lift_seed ? add_lattice_noise(x0, ctx.source_rel, lift_seed, column) : x0;
        ++column;
        IntVec v = ctx.AGIh.mul_vec(x);
        auto w = solve_kron_left(ctx.swapped.res.inclusion_snf, h, rH, v, g);
        if (!w) throw InternalError("eta: lift across the right resolution failed");
        IntVec flipped = transpose_factors(*w, g, rH);
        // certify: the transposed lift still maps into the relation lattice of Q(H) ⊗ G
        IntVec image = ctx.AHIg.mul_vec(flipped);
        if (!solve_kron_left(ctx.MGt_snf, g, ctx.G.relations(), image, h))
            throw InternalError("eta: chase image left the relation lattice");
        return flipped;
    };

    TorMatrix out{kernel_map(ctx.lt.kernel, ctx.swapped.kernel, chase),
                  ctx.swapped.kernel.moduli(), ctx.lt.kernel.moduli()};
    if (!induces_isomorphism(out.mat, out.row_moduli, ctx.lt.value(), ctx.swapped.value()))
        throw InternalError("eta: swap map is not an isomorphism");
    return out;
}

TorMatrix eta(const PresentationMatrix& G, const PresentationMatrix& H, std::uint64_t lift_seed) {
    return eta(make_eta_context(G, H), lift_seed);
}

IntMatrix lift_to_P(const FreeResolution& target, const FreeResolution& source,
                    const IntMatrix& f) {
    IntMatrix fA = f.mul(source.inclusion);
    IntMatrix out(target.P_rank(), source.P_rank());
    for (std::size_t j = 0; j < fA.cols(); ++j) {
        auto w = solve_cols(target.inclusion_snf, fA.col(j));
        if (!w) throw InternalError("lift_to_P: map does not respect the relations");
        out.set_col(j, *w);
    }
    return out;
}

IntMatrix tor_induced(const LeftTor& source, const LeftTor& target,
                      const IntMatrix& f, const IntMatrix& g) {
    IntMatrix phiP = lift_to_P(target.res, source.res, f);
    IntMatrix block = kron(phiP, g);
    return kernel_map(source.kernel, target.kernel,
                      [&](const IntVec& x) { return block.mul_vec(x); });
}

} // namespace flipk

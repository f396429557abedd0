// AVX2 + FMA variant of the stepper kernels. This translation unit is
// compiled with -mavx2 -mfma and must only be entered after a runtime
// cpuid check (see dispatch.cpp).

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "node_ops.hpp"

namespace znd::kernels {

namespace {

// exp on 4 doubles, Cephes-style: x = n ln2 + r, e^r by a Pade approximant
// in r^2, then scale by 2^n through the exponent bits. 1-2 ulp over the
// clamped domain, far below every tolerance this code feeds.
inline __m256d exp_pd(__m256d x) {
    const __m256d max_x = _mm256_set1_pd(709.436);
    const __m256d min_x = _mm256_set1_pd(-709.436);
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
    const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
    const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);

    x = _mm256_min_pd(_mm256_max_pd(x, min_x), max_x);

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, ln2_hi, x);
    r = _mm256_fnmadd_pd(n, ln2_lo, r);
    const __m256d r2 = _mm256_mul_pd(r, r);

    __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(3.02994407707441961300e-2));
    p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(9.99999999999999999910e-1));
    p = _mm256_mul_pd(p, r);

    __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
    q = _mm256_fmadd_pd(q, r2, _mm256_set1_pd(2.52448340349684104192e-3));
    q = _mm256_fmadd_pd(q, r2, _mm256_set1_pd(2.27265548208155028766e-1));
    q = _mm256_fmadd_pd(q, r2, _mm256_set1_pd(2.00000000000000000005e0));

    const __m256d er = _mm256_add_pd(_mm256_set1_pd(1.0),
        _mm256_mul_pd(_mm256_set1_pd(2.0),
                      _mm256_div_pd(p, _mm256_sub_pd(q, p))));

    const __m128i n32 = _mm256_cvtpd_epi32(n);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i bits =
        _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(er, _mm256_castsi256_pd(bits));
}

inline __m256d abs_pd(__m256d x) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

inline __m256d minmod_pd(__m256d x, __m256d y) {
    const __m256d same = _mm256_cmp_pd(_mm256_mul_pd(x, y), _mm256_setzero_pd(), _CMP_GT_OQ);
    const __m256d mag = _mm256_min_pd(abs_pd(x), abs_pd(y));
    const __m256d sign = _mm256_and_pd(x, _mm256_set1_pd(-0.0));
    return _mm256_and_pd(same, _mm256_or_pd(mag, sign));
}

void coeffs_avx2(const StepArrays& a, const StepConsts& c) {
    if (c.arrhenius) { // Arrhenius gating stays on the reference path
        for (std::size_t j = 0; j < a.n; ++j)
            detail::coeffs_node(a, c, j);
        return;
    }

    const __m256d alpha = _mm256_set1_pd(c.alpha);
    const __m256d inv_beta = _mm256_set1_pd(1.0 / c.beta);
    const __m256d lam_b = _mm256_set1_pd(c.lambda_b);
    const __m256d half_inv_lb = _mm256_set1_pd(0.5 / c.lambda_b);
    const __m256d coef_nu = _mm256_set1_pd(c.coef_nu);
    const __m256d nu_i = _mm256_set1_pd(c.nu_iota);
    const __m256d s_i = _mm256_set1_pd(c.s_iota);
    const __m256d g = _mm256_set1_pd(c.gamma);
    const __m256d gp1 = _mm256_set1_pd(c.gamma + 1.0);
    const __m256d equad = _mm256_set1_pd((c.gamma * c.gamma + c.gamma)
                                         / (2.0 * (c.gamma - 1.0)));
    const __m256d half_g = _mm256_set1_pd(0.5 * c.gamma);
    const __m256d mkappa = _mm256_set1_pd(-c.kappa);
    const __m256d kh = _mm256_set1_pd(c.kappa * c.hbar);
    const __m256d t_ig = _mm256_set1_pd(c.t_ignite);
    const __m256d t_floor = _mm256_set1_pd(c.t_ignite + 1e-12);
    const __m256d two_lb_coef = _mm256_set1_pd(2.0 * c.lambda_b * c.coef_nu);
    const __m256d one = _mm256_set1_pd(1.0);

    std::size_t j = 0;
    for (; j + 4 <= a.n; j += 4) {
        const __m256d p1 = _mm256_mul_pd(alpha, _mm256_loadu_pd(a.phi1 + j));
        const __m256d p2 = _mm256_mul_pd(inv_beta, _mm256_loadu_pd(a.phi2 + j));
        const __m256d p3 = _mm256_loadu_pd(a.phi3 + j);

        const __m256d p13 = _mm256_add_pd(p1, p3);
        const __m256d nu = _mm256_add_pd(
            _mm256_fmadd_pd(coef_nu, p2,
                            _mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), p13),
                                          half_inv_lb)),
            nu_i);
        const __m256d es = exp_pd(_mm256_add_pd(p2, s_i));
        const __m256d lam = _mm256_sqrt_pd(_mm256_mul_pd(g, es));

        const __m256d denom = _mm256_add_pd(lam, lam_b);
        const __m256d b3 = _mm256_div_pd(_mm256_sub_pd(lam, lam_b), denom);
        const __m256d b2 = _mm256_div_pd(
            _mm256_mul_pd(lam, _mm256_fnmadd_pd(two_lb_coef, p2, p13)), denom);

        // T = e^s (g/2 nu^2 - (g+1) nu + (g^2+g)/(2(g-1)))
        __m256d tpoly = _mm256_fmadd_pd(half_g, nu, _mm256_sub_pd(_mm256_setzero_pd(), gp1));
        tpoly = _mm256_fmadd_pd(tpoly, nu, equad);
        const __m256d temp = _mm256_mul_pd(es, tpoly);

        __m256d s2 = _mm256_setzero_pd();
        __m256d src = _mm256_setzero_pd();
        if (c.reaction_on) {
            const __m256d z = exp_pd(_mm256_mul_pd(mkappa, _mm256_loadu_pd(a.age + j)));
            const __m256d psi =
                _mm256_and_pd(_mm256_cmp_pd(temp, t_ig, _CMP_GT_OQ), one);
            const __m256d t_eff = _mm256_max_pd(temp, t_floor);
            s2 = _mm256_div_pd(_mm256_mul_pd(psi, _mm256_mul_pd(kh, z)), t_eff);
            const __m256d bracket = _mm256_fmadd_pd(
                _mm256_add_pd(one, b3), _mm256_mul_pd(lam_b, coef_nu), b2);
            src = _mm256_mul_pd(bracket, s2);
        }

        _mm256_storeu_pd(a.lam + j, lam);
        _mm256_storeu_pd(a.b2 + j, b2);
        _mm256_storeu_pd(a.b3 + j, b3);
        _mm256_storeu_pd(a.src + j, src);
        _mm256_storeu_pd(a.s2 + j, s2);
        _mm256_storeu_pd(a.nu + j, nu);
        _mm256_storeu_pd(a.temp + j, temp);
    }
    for (; j < a.n; ++j)
        detail::coeffs_node(a, c, j);
}

// Limited upwind xi-derivative, vectorized; mirrors detail::deriv_right /
// deriv_left on spans where the full stencil exists.
inline __m256d deriv_right_v(const double* f, std::size_t j, __m256d inv_dxi, int order) {
    const __m256d fj = _mm256_loadu_pd(f + j);
    const __m256d fp = _mm256_loadu_pd(f + j + 1);
    const __m256d d1 = _mm256_mul_pd(_mm256_sub_pd(fp, fj), inv_dxi);
    if (order < 2)
        return d1;
    const __m256d fpp = _mm256_loadu_pd(f + j + 2);
    const __m256d fm = _mm256_loadu_pd(f + j - 1);
    const __m256d curv_up = _mm256_add_pd(_mm256_fnmadd_pd(_mm256_set1_pd(2.0), fp, fpp), fj);
    const __m256d curv_ct = _mm256_add_pd(_mm256_fnmadd_pd(_mm256_set1_pd(2.0), fj, fp), fm);
    const __m256d corr = _mm256_mul_pd(minmod_pd(curv_up, curv_ct), inv_dxi);
    return _mm256_fnmadd_pd(_mm256_set1_pd(0.5), corr, d1);
}

inline __m256d deriv_left_v(const double* f, std::size_t j, __m256d inv_dxi, int order) {
    const __m256d fj = _mm256_loadu_pd(f + j);
    const __m256d fm = _mm256_loadu_pd(f + j - 1);
    const __m256d d1 = _mm256_mul_pd(_mm256_sub_pd(fj, fm), inv_dxi);
    if (order < 2)
        return d1;
    const __m256d fmm = _mm256_loadu_pd(f + j - 2);
    const __m256d fp = _mm256_loadu_pd(f + j + 1);
    const __m256d curv_up = _mm256_add_pd(_mm256_fnmadd_pd(_mm256_set1_pd(2.0), fm, fj), fmm);
    const __m256d curv_ct = _mm256_add_pd(_mm256_fnmadd_pd(_mm256_set1_pd(2.0), fj, fp), fm);
    const __m256d corr = _mm256_mul_pd(minmod_pd(curv_up, curv_ct), inv_dxi);
    return _mm256_fmadd_pd(_mm256_set1_pd(0.5), corr, d1);
}

void update_avx2(const StepArrays& a, const StepConsts& c) {
    const std::size_t last = a.n - 1;
    // Interior span where every family and the full limiter stencil exist.
    const std::size_t lo = (c.space_order >= 2) ? 2 : 1;
    const std::size_t hi = (c.space_order >= 2) ? (last >= 2 ? last - 2 : 0)
                                                : last - 1; // inclusive

    for (std::size_t j = 0; j < lo && j < a.n; ++j)
        detail::update_node(a, c, j);
    for (std::size_t j = (hi + 1 > lo ? hi + 1 : lo); j < a.n; ++j)
        detail::update_node(a, c, j);

    const __m256d inv_chi = _mm256_set1_pd(1.0 / c.chi);
    const __m256d chi_p = _mm256_set1_pd(c.chi_prime);
    const __m256d inv_dxi = _mm256_set1_pd(c.inv_dxi);
    const __m256d last_v = _mm256_set1_pd(static_cast<double>(last));
    const __m256d iota = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    const __m256d beta = _mm256_set1_pd(c.beta);
    const __m256d inv_ab = _mm256_set1_pd(1.0 / (c.alpha * c.beta));
    const __m256d inv_a = _mm256_set1_pd(1.0 / c.alpha);
    const __m256d alpha = _mm256_set1_pd(c.alpha);
    const __m256d inv_b = _mm256_set1_pd(1.0 / c.beta);
    const __m256d dt = _mm256_set1_pd(c.dt);

    std::size_t j = lo;
    for (; j + 4 <= hi + 1; j += 4) {
        const __m256d jv = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(j)), iota);
        const __m256d xi = _mm256_div_pd(jv, last_v);
        const __m256d xs = _mm256_mul_pd(xi, chi_p);
        const __m256d lam = _mm256_loadu_pd(a.lam + j);
        const __m256d a1 = _mm256_mul_pd(
            _mm256_sub_pd(_mm256_sub_pd(_mm256_setzero_pd(), lam), xs), inv_chi);
        const __m256d a2 = _mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), xs), inv_chi);
        const __m256d a3 = _mm256_mul_pd(_mm256_sub_pd(lam, xs), inv_chi);

        const __m256d b2 = _mm256_loadu_pd(a.b2 + j);
        const __m256d b3 = _mm256_loadu_pd(a.b3 + j);
        const __m256d src = _mm256_loadu_pd(a.src + j);
        const __m256d s2 = _mm256_loadu_pd(a.s2 + j);
        const __m256d t1l = _mm256_loadu_pd(a.tau1_lag + j);
        const __m256d t2l = _mm256_loadu_pd(a.tau2_lag + j);
        const __m256d t3l = _mm256_loadu_pd(a.tau3_lag + j);

        const __m256d d2r = deriv_right_v(a.phi2, j, inv_dxi, c.space_order);
        const __m256d tau2 = _mm256_fnmadd_pd(a2, d2r, _mm256_mul_pd(beta, s2));

        const __m256d d11 = deriv_right_v(a.phi1, j, inv_dxi, c.space_order);
        const __m256d d13 = deriv_right_v(a.phi3, j, inv_dxi, c.space_order);
        __m256d tau1 = _mm256_fnmadd_pd(a1, d11, _mm256_mul_pd(src, inv_a));
        tau1 = _mm256_fnmadd_pd(_mm256_mul_pd(b2, inv_ab),
                                _mm256_fmadd_pd(a1, d2r, t2l), tau1);
        tau1 = _mm256_fnmadd_pd(_mm256_mul_pd(b3, inv_a),
                                _mm256_fmadd_pd(a1, d13, t3l), tau1);

        const __m256d d31 = deriv_left_v(a.phi1, j, inv_dxi, c.space_order);
        const __m256d d32 = deriv_left_v(a.phi2, j, inv_dxi, c.space_order);
        const __m256d d33 = deriv_left_v(a.phi3, j, inv_dxi, c.space_order);
        __m256d tau3 = _mm256_fnmadd_pd(a3, d33, src);
        tau3 = _mm256_fnmadd_pd(_mm256_mul_pd(alpha, b3),
                                _mm256_fmadd_pd(a3, d31, t1l), tau3);
        tau3 = _mm256_fnmadd_pd(_mm256_mul_pd(b2, inv_b),
                                _mm256_fmadd_pd(a3, d32, t2l), tau3);

        _mm256_storeu_pd(a.tau1_new + j, tau1);
        _mm256_storeu_pd(a.tau2_new + j, tau2);
        _mm256_storeu_pd(a.tau3_new + j, tau3);
        _mm256_storeu_pd(a.phi1_new + j,
                         _mm256_fmadd_pd(dt, tau1, _mm256_loadu_pd(a.phi1 + j)));
        _mm256_storeu_pd(a.phi2_new + j,
                         _mm256_fmadd_pd(dt, tau2, _mm256_loadu_pd(a.phi2 + j)));
        _mm256_storeu_pd(a.phi3_new + j,
                         _mm256_fmadd_pd(dt, tau3, _mm256_loadu_pd(a.phi3 + j)));
    }
    for (; j <= hi; ++j)
        detail::update_node(a, c, j);
}

} // namespace

const Kernels& avx2_kernels() {
    static const Kernels k{&coeffs_avx2, &update_avx2, "avx2"};
    return k;
}

} // namespace znd::kernels

#endif // x86_64

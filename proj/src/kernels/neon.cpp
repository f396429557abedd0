// NEON (AArch64) variant of the stepper kernels; NEON is baseline on
// aarch64, so no runtime feature check is needed beyond the architecture.
// Mirrors the AVX2 translation unit at width 2.

#if defined(__aarch64__)

#include <arm_neon.h>

#include "node_ops.hpp"

namespace znd::kernels {

namespace {

inline float64x2_t set1(double v) { return vdupq_n_f64(v); }

// See avx2.cpp: same Pade approximant and 2^n exponent-bit scaling.
inline float64x2_t exp_pd(float64x2_t x) {
    x = vminq_f64(vmaxq_f64(x, set1(-709.436)), set1(709.436));

    const float64x2_t n = vrndnq_f64(vmulq_f64(x, set1(1.4426950408889634073599)));
    float64x2_t r = vfmsq_f64(x, n, set1(6.93145751953125e-1));
    r = vfmsq_f64(r, n, set1(1.42860682030941723212e-6));
    const float64x2_t r2 = vmulq_f64(r, r);

    float64x2_t p = set1(1.26177193074810590878e-4);
    p = vfmaq_f64(set1(3.02994407707441961300e-2), p, r2);
    p = vfmaq_f64(set1(9.99999999999999999910e-1), p, r2);
    p = vmulq_f64(p, r);

    float64x2_t q = set1(3.00198505138664455042e-6);
    q = vfmaq_f64(set1(2.52448340349684104192e-3), q, r2);
    q = vfmaq_f64(set1(2.27265548208155028766e-1), q, r2);
    q = vfmaq_f64(set1(2.00000000000000000005e0), q, r2);

    const float64x2_t er =
        vfmaq_f64(set1(1.0), set1(2.0), vdivq_f64(p, vsubq_f64(q, p)));

    const int64x2_t ni = vcvtq_s64_f64(n);
    const int64x2_t bits = vshlq_n_s64(vaddq_s64(ni, vdupq_n_s64(1023)), 52);
    return vmulq_f64(er, vreinterpretq_f64_s64(bits));
}

inline float64x2_t minmod_pd(float64x2_t x, float64x2_t y) {
    const uint64x2_t same = vcgtq_f64(vmulq_f64(x, y), set1(0.0));
    const float64x2_t mag = vminq_f64(vabsq_f64(x), vabsq_f64(y));
    const uint64x2_t sign =
        vandq_u64(vreinterpretq_u64_f64(x), vreinterpretq_u64_f64(set1(-0.0)));
    const uint64x2_t val = vorrq_u64(vreinterpretq_u64_f64(mag), sign);
    return vreinterpretq_f64_u64(vandq_u64(same, val));
}

void coeffs_neon(const StepArrays& a, const StepConsts& c) {
    if (c.arrhenius) {
        for (std::size_t j = 0; j < a.n; ++j)
            detail::coeffs_node(a, c, j);
        return;
    }

    const float64x2_t alpha = set1(c.alpha);
    const float64x2_t inv_beta = set1(1.0 / c.beta);
    const float64x2_t lam_b = set1(c.lambda_b);
    const float64x2_t half_inv_lb = set1(0.5 / c.lambda_b);
    const float64x2_t coef_nu = set1(c.coef_nu);
    const float64x2_t nu_i = set1(c.nu_iota);
    const float64x2_t s_i = set1(c.s_iota);
    const float64x2_t g = set1(c.gamma);
    const float64x2_t gp1 = set1(c.gamma + 1.0);
    const float64x2_t equad = set1((c.gamma * c.gamma + c.gamma) / (2.0 * (c.gamma - 1.0)));
    const float64x2_t half_g = set1(0.5 * c.gamma);
    const float64x2_t mkappa = set1(-c.kappa);
    const float64x2_t kh = set1(c.kappa * c.hbar);
    const float64x2_t t_ig = set1(c.t_ignite);
    const float64x2_t t_floor = set1(c.t_ignite + 1e-12);
    const float64x2_t two_lb_coef = set1(2.0 * c.lambda_b * c.coef_nu);
    const float64x2_t one = set1(1.0);

    std::size_t j = 0;
    for (; j + 2 <= a.n; j += 2) {
        const float64x2_t p1 = vmulq_f64(alpha, vld1q_f64(a.phi1 + j));
        const float64x2_t p2 = vmulq_f64(inv_beta, vld1q_f64(a.phi2 + j));
        const float64x2_t p3 = vld1q_f64(a.phi3 + j);

        const float64x2_t p13 = vaddq_f64(p1, p3);
        const float64x2_t nu = vaddq_f64(
            vfmaq_f64(vmulq_f64(vnegq_f64(p13), half_inv_lb), coef_nu, p2), nu_i);
        const float64x2_t es = exp_pd(vaddq_f64(p2, s_i));
        const float64x2_t lam = vsqrtq_f64(vmulq_f64(g, es));

        const float64x2_t denom = vaddq_f64(lam, lam_b);
        const float64x2_t b3 = vdivq_f64(vsubq_f64(lam, lam_b), denom);
        const float64x2_t b2 =
            vdivq_f64(vmulq_f64(lam, vfmsq_f64(p13, two_lb_coef, p2)), denom);

        float64x2_t tpoly = vfmaq_f64(vnegq_f64(gp1), half_g, nu);
        tpoly = vfmaq_f64(equad, tpoly, nu);
        const float64x2_t temp = vmulq_f64(es, tpoly);

        float64x2_t s2 = set1(0.0);
        float64x2_t src = set1(0.0);
        if (c.reaction_on) {
            const float64x2_t z = exp_pd(vmulq_f64(mkappa, vld1q_f64(a.age + j)));
            const float64x2_t psi = vreinterpretq_f64_u64(
                vandq_u64(vcgtq_f64(temp, t_ig), vreinterpretq_u64_f64(one)));
            const float64x2_t t_eff = vmaxq_f64(temp, t_floor);
            s2 = vdivq_f64(vmulq_f64(psi, vmulq_f64(kh, z)), t_eff);
            const float64x2_t bracket =
                vfmaq_f64(b2, vaddq_f64(one, b3), vmulq_f64(lam_b, coef_nu));
            src = vmulq_f64(bracket, s2);
        }

        vst1q_f64(a.lam + j, lam);
        vst1q_f64(a.b2 + j, b2);
        vst1q_f64(a.b3 + j, b3);
        vst1q_f64(a.src + j, src);
        vst1q_f64(a.s2 + j, s2);
        vst1q_f64(a.nu + j, nu);
        vst1q_f64(a.temp + j, temp);
    }
    for (; j < a.n; ++j)
        detail::coeffs_node(a, c, j);
}

inline float64x2_t deriv_right_v(const double* f, std::size_t j, float64x2_t inv_dxi,
                                 int order) {
    const float64x2_t fj = vld1q_f64(f + j);
    const float64x2_t fp = vld1q_f64(f + j + 1);
    const float64x2_t d1 = vmulq_f64(vsubq_f64(fp, fj), inv_dxi);
    if (order < 2)
        return d1;
    const float64x2_t fpp = vld1q_f64(f + j + 2);
    const float64x2_t fm = vld1q_f64(f + j - 1);
    const float64x2_t curv_up = vaddq_f64(vfmsq_f64(fpp, set1(2.0), fp), fj);
    const float64x2_t curv_ct = vaddq_f64(vfmsq_f64(fp, set1(2.0), fj), fm);
    const float64x2_t corr = vmulq_f64(minmod_pd(curv_up, curv_ct), inv_dxi);
    return vfmsq_f64(d1, set1(0.5), corr);
}

inline float64x2_t deriv_left_v(const double* f, std::size_t j, float64x2_t inv_dxi,
                                int order) {
    const float64x2_t fj = vld1q_f64(f + j);
    const float64x2_t fm = vld1q_f64(f + j - 1);
    const float64x2_t d1 = vmulq_f64(vsubq_f64(fj, fm), inv_dxi);
    if (order < 2)
        return d1;
    const float64x2_t fmm = vld1q_f64(f + j - 2);
    const float64x2_t fp = vld1q_f64(f + j + 1);
    const float64x2_t curv_up = vaddq_f64(vfmsq_f64(fj, set1(2.0), fm), fmm);
    const float64x2_t curv_ct = vaddq_f64(vfmsq_f64(fp, set1(2.0), fj), fm);
    const float64x2_t corr = vmulq_f64(minmod_pd(curv_up, curv_ct), inv_dxi);
    return vfmaq_f64(d1, set1(0.5), corr);
}

void update_neon(const StepArrays& a, const StepConsts& c) {
    const std::size_t last = a.n - 1;
    const std::size_t lo = (c.space_order >= 2) ? 2 : 1;
    const std::size_t hi = (c.space_order >= 2) ? (last >= 2 ? last - 2 : 0)
                                                : last - 1; // inclusive

    for (std::size_t j = 0; j < lo && j < a.n; ++j)
        detail::update_node(a, c, j);
    for (std::size_t j = (hi + 1 > lo ? hi + 1 : lo); j < a.n; ++j)
        detail::update_node(a, c, j);

    const float64x2_t inv_chi = set1(1.0 / c.chi);
    const float64x2_t chi_p = set1(c.chi_prime);
    const float64x2_t inv_dxi = set1(c.inv_dxi);
    const float64x2_t last_v = set1(static_cast<double>(last));
    const float64x2_t iota = {0.0, 1.0};
    const float64x2_t beta = set1(c.beta);
    const float64x2_t inv_ab = set1(1.0 / (c.alpha * c.beta));
    const float64x2_t inv_a = set1(1.0 / c.alpha);
    const float64x2_t alpha = set1(c.alpha);
    const float64x2_t inv_b = set1(1.0 / c.beta);
    const float64x2_t dt = set1(c.dt);

    std::size_t j = lo;
    for (; j + 2 <= hi + 1; j += 2) {
        const float64x2_t jv = vaddq_f64(set1(static_cast<double>(j)), iota);
        const float64x2_t xi = vdivq_f64(jv, last_v);
        const float64x2_t xs = vmulq_f64(xi, chi_p);
        const float64x2_t lam = vld1q_f64(a.lam + j);
        const float64x2_t a1 = vmulq_f64(vsubq_f64(vnegq_f64(lam), xs), inv_chi);
        const float64x2_t a2 = vmulq_f64(vnegq_f64(xs), inv_chi);
        const float64x2_t a3 = vmulq_f64(vsubq_f64(lam, xs), inv_chi);

        const float64x2_t b2 = vld1q_f64(a.b2 + j);
        const float64x2_t b3 = vld1q_f64(a.b3 + j);
        const float64x2_t src = vld1q_f64(a.src + j);
        const float64x2_t s2 = vld1q_f64(a.s2 + j);
        const float64x2_t t1l = vld1q_f64(a.tau1_lag + j);
        const float64x2_t t2l = vld1q_f64(a.tau2_lag + j);
        const float64x2_t t3l = vld1q_f64(a.tau3_lag + j);

        const float64x2_t d2r = deriv_right_v(a.phi2, j, inv_dxi, c.space_order);
        const float64x2_t tau2 = vfmsq_f64(vmulq_f64(beta, s2), a2, d2r);

        const float64x2_t d11 = deriv_right_v(a.phi1, j, inv_dxi, c.space_order);
        const float64x2_t d13 = deriv_right_v(a.phi3, j, inv_dxi, c.space_order);
        float64x2_t tau1 = vfmsq_f64(vmulq_f64(src, inv_a), a1, d11);
        tau1 = vfmsq_f64(tau1, vmulq_f64(b2, inv_ab), vfmaq_f64(t2l, a1, d2r));
        tau1 = vfmsq_f64(tau1, vmulq_f64(b3, inv_a), vfmaq_f64(t3l, a1, d13));

        const float64x2_t d31 = deriv_left_v(a.phi1, j, inv_dxi, c.space_order);
        const float64x2_t d32 = deriv_left_v(a.phi2, j, inv_dxi, c.space_order);
        const float64x2_t d33 = deriv_left_v(a.phi3, j, inv_dxi, c.space_order);
        float64x2_t tau3 = vfmsq_f64(src, a3, d33);
        tau3 = vfmsq_f64(tau3, vmulq_f64(alpha, b3), vfmaq_f64(t1l, a3, d31));
        tau3 = vfmsq_f64(tau3, vmulq_f64(b2, inv_b), vfmaq_f64(t2l, a3, d32));

        vst1q_f64(a.tau1_new + j, tau1);
        vst1q_f64(a.tau2_new + j, tau2);
        vst1q_f64(a.tau3_new + j, tau3);
        vst1q_f64(a.phi1_new + j, vfmaq_f64(vld1q_f64(a.phi1 + j), dt, tau1));
        vst1q_f64(a.phi2_new + j, vfmaq_f64(vld1q_f64(a.phi2 + j), dt, tau2));
        vst1q_f64(a.phi3_new + j, vfmaq_f64(vld1q_f64(a.phi3 + j), dt, tau3));
    }
    for (; j <= hi; ++j)
        detail::update_node(a, c, j);
}

} // namespace

const Kernels& neon_kernels() {
    static const Kernels k{&coeffs_neon, &update_neon, "neon"};
    return k;
}

} // namespace znd::kernels

#endif // __aarch64__

#include "node_ops.hpp"

namespace znd::kernels {

namespace {

void coeffs_scalar(const StepArrays& a, const StepConsts& c) {
    for (std::size_t j = 0; j < a.n; ++j)
        detail::coeffs_node(a, c, j);
}

void update_scalar(const StepArrays& a, const StepConsts& c) {
    for (std::size_t j = 0; j < a.n; ++j)
        detail::update_node(a, c, j);
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k{&coeffs_scalar, &update_scalar, "scalar"};
    return k;
}

} // namespace znd::kernels

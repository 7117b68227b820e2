#include "shellmin/kernel.hpp"

#include <cmath>
#include <vector>

namespace shellmin {

double kernel_value_at(const KernelParams& p, double r) {
    if (r == 0.0) {
        if (std::min(p.alpha, p.beta) <= 0.0)
            throw singularity_error("kernel_value: W(0) undefined for nonpositive exponent");
        return 0.0;
    }
    return radial_power(r, p.alpha) / p.alpha - radial_power(r, p.beta) / p.beta;
}

double kernel_value(const Kernel& k, const Vec& x) {
    return kernel_value_at(k.params, x.norm());
}

Vec kernel_gradient(const Kernel& k, const Vec& x) {
    const double r = x.norm();
    if (r == 0.0) {
        if (k.params.beta < 2.0)
            throw singularity_error("kernel_gradient: singular at x = 0 for beta < 2");
        return Vec::Zero(x.size());
    }
    const double scale = radial_power(r, k.params.alpha - 2.0) - radial_power(r, k.params.beta - 2.0);
    return scale * x;
}

double interaction_energy(const Kernel& k, const DiscreteMeasure& m) {
    const Mat& x = m.points();
    const Vec& w = m.weights();
    CompensatedSum e;
    for (Index i = 0; i < x.cols(); ++i)
        for (Index j = i + 1; j < x.cols(); ++j)
            e.add(w[i] * w[j] * kernel_value_at(k.params, (x.col(i) - x.col(j)).norm()));
    return e.value();
}

double potential_field(const Kernel& k, const DiscreteMeasure& m, const Vec& x) {
    const Mat& pts = m.points();
    CompensatedSum v;
    for (Index j = 0; j < pts.cols(); ++j)
        v.add(m.weights()[j] * kernel_value_at(k.params, (x - pts.col(j)).norm()));
    return v.value();
}

Vec field_gradient(const Kernel& k, const DiscreteMeasure& m, const Vec& x) {
    const Mat& pts = m.points();
    std::vector<CompensatedSum> g(static_cast<size_t>(x.size()));
    for (Index j = 0; j < pts.cols(); ++j) {
        const Vec grad = m.weights()[j] * kernel_gradient(k, Vec(x - pts.col(j)));
        for (Index d = 0; d < x.size(); ++d) g[static_cast<size_t>(d)].add(grad[d]);
    }
    Vec out(x.size());
    for (Index d = 0; d < x.size(); ++d) out[d] = g[static_cast<size_t>(d)].value();
    return out;
}

double power_energy(const DiscreteMeasure& m, double alpha) {
    const Mat& x = m.points();
    const Vec& w = m.weights();
    CompensatedSum e;
    for (Index i = 0; i < x.cols(); ++i)
        for (Index j = i + 1; j < x.cols(); ++j)
            e.add(w[i] * w[j] * radial_power((x.col(i) - x.col(j)).norm(), alpha));
    return e.value() / alpha;
}

} // namespace shellmin

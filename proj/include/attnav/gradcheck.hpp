#pragma once

#include <string>
#include <vector>

#include "attnav/rng.hpp"
#include "attnav/tensor.hpp"

namespace attnav {

struct GradCheckReport {
    int checked = 0;
    double max_rel_err = 0.0;
    std::string worst_param;
};

// Compares analytic gradients against central finite differences on a random
// subset of parameters. Model must provide:
//   parameters() -> std::vector<ParamRef<T>>
//   loss() -> T                 (pure forward evaluation)
//   grads()                     (zero grads, forward + backward, fill grads)
// Intended for the 64-bit shadow networks; float models pass looser bounds.
template <typename T, typename Model>
GradCheckReport gradcheck(Model& model, Rng& rng, int min_params = 100, double h = 1e-3) {
    auto params = model.parameters();
    model.grads();
    // snapshot analytic grads before the perturbed forwards overwrite caches
    std::vector<std::vector<T>> analytic;
    int total = 0;
    for (auto& p : params) {
        analytic.push_back(p.tensor->grad);
        total += p.tensor->numel();
    }
    int to_check = std::min(total, min_params);

    GradCheckReport report;
    for (int c = 0; c < to_check; ++c) {
        int flat = rng.uniform_int(total);
        int pi = 0;
        while (flat >= params[pi].tensor->numel()) {
            flat -= params[pi].tensor->numel();
            ++pi;
        }
        TensorT<T>& t = *params[pi].tensor;
        T saved = t.data[flat];
        t.data[flat] = saved + static_cast<T>(h);
        double lp = static_cast<double>(model.loss());
        t.data[flat] = saved - static_cast<T>(h);
        double lm = static_cast<double>(model.loss());
        t.data[flat] = saved;
        double numeric = (lp - lm) / (2.0 * h);
        double a = static_cast<double>(analytic[pi][flat]);
        double denom = std::max(std::abs(a), std::abs(numeric));
        double err = denom < 1e-10 ? 0.0 : std::abs(a - numeric) / denom;
        if (err > report.max_rel_err) {
            report.max_rel_err = err;
            report.worst_param = str(params[pi].name, "[", flat, "]");
        }
        ++report.checked;
    }
    return report;
}

}  // namespace attnav

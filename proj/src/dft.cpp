// SPDX-License-Identifier: Apache-2.0
#include "dft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace fbmc::detail {
namespace {

struct PlanCache {
    std::mutex mu;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans;

    ~PlanCache()
    {
        for (auto& [key, plan] : plans)
            fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int sign)
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = plans.find({n, sign});
        if (it != plans.end())
            return it->second;
        std::vector<cd> scratch(n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (p == nullptr)
            throw ConsistencyError("dft: FFTW failed to create a plan of length " + std::to_string(n));
        plans.emplace(std::make_pair(n, sign), p);
        return p;
    }
};

PlanCache& cache()
{
    static PlanCache c;
    return c;
}

void run(std::span<cd> x, int sign)
{
    if (x.empty())
        return;
    fftw_plan p = cache().get(x.size(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(x.data());
    fftw_execute_dft(p, buf, buf);
}

} // namespace

void dft_forward(std::span<cd> x) { run(x, FFTW_FORWARD); }
void dft_inverse(std::span<cd> x) { run(x, FFTW_BACKWARD); }

} // namespace fbmc::detail

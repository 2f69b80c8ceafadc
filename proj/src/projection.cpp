#include "algb/projection.hpp"

#include <algorithm>

#include "algb/error.hpp"

namespace algb {

SmoothProjection SmoothProjection::make(RingPtr total, const std::vector<std::string>& fiber_vars,
                                        const std::vector<std::string>& base_vars) {
    SmoothProjection p;
    p.total = std::move(total);
    std::vector<bool> used(p.total->nvars(), false);
    auto resolve = [&](const std::vector<std::string>& names, std::vector<std::size_t>& out) {
        for (const auto& name : names) {
            auto idx = p.total->index_of(name);
            if (!idx) throw Error("bad-projection", "unknown variable '" + name + "'");
            if (used[*idx]) throw Error("bad-projection", "variable '" + name + "' listed twice");
            used[*idx] = true;
            out.push_back(*idx);
        }
    };
    resolve(fiber_vars, p.fiber);
    resolve(base_vars, p.base);
    if (!std::all_of(used.begin(), used.end(), [](bool b) { return b; }))
        throw Error("bad-projection", "fiber and base variables must cover the ring");
    return p;
}

bool SmoothProjection::is_base_index(std::size_t var) const {
    return std::find(base.begin(), base.end(), var) != base.end();
}

std::vector<std::string> SmoothProjection::fiber_names() const {
    std::vector<std::string> out;
    for (std::size_t i : fiber) out.push_back(total->var(i));
    return out;
}

std::vector<std::string> SmoothProjection::base_names() const {
    std::vector<std::string> out;
    for (std::size_t i : base) out.push_back(total->var(i));
    return out;
}

RingPtr SmoothProjection::fiber_ring() const { return Ring::make(fiber_names()); }
RingPtr SmoothProjection::base_ring() const { return Ring::make(base_names()); }

}  // namespace algb

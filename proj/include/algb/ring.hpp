#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "algb/error.hpp"

namespace algb {

// Polynomial ring over the rationals, identified by its ordered variable list.
// A ring with no variables models a point; its polynomials are the scalars.
class Ring {
public:
    static std::shared_ptr<const Ring> make(std::vector<std::string> vars);

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::string& var(std::size_t i) const { return vars_[i]; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    friend bool operator==(const Ring& a, const Ring& b) { return a.vars_ == b.vars_; }

private:
    explicit Ring(std::vector<std::string> vars) : vars_(std::move(vars)) {}
    std::vector<std::string> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && *a == *b);
}

}  // namespace algb

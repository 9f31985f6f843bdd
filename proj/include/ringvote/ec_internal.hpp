#pragma once

#include <vector>

#include "ringvote/curve.hpp"

// Jacobian-coordinate arithmetic in Montgomery form. Internal: no validation,
// callers guarantee on-curve inputs. Used by Curve and the ring-signature
// hot path.

namespace ringvote::detail {

struct JPoint {
    U256 x{}, y{}, z{}; // Montgomery form; z == 0 marks infinity
    bool is_infinity() const { return z.is_zero(); }
};

// Affine point in Montgomery form (z implicitly 1); compact table entry.
struct APoint {
    U256 x{}, y{};
};

JPoint to_jacobian(const Curve& c, const Point& p);
Point from_jacobian(const Curve& c, const JPoint& p);

JPoint jdbl(const Curve& c, const JPoint& p);
JPoint jadd(const Curve& c, const JPoint& p, const JPoint& q);
JPoint jadd_mixed(const Curve& c, const JPoint& p, const APoint& q);
JPoint jneg(const Curve& c, const JPoint& p);

// Plain double-and-add, any exponent (used for cofactor clearing too).
JPoint jmul(const Curve& c, const U256& k, const JPoint& p);

// Normalize many Jacobian points with a single field inversion.
std::vector<Point> batch_normalize(const Curve& c, const std::vector<JPoint>& pts);

// Fixed-base comb: 4-bit windows over the scalar width, all window multiples
// precomputed and normalized. mul() then needs only ~bits/4 mixed additions
// and no doublings.
class GeneratorTable {
public:
    GeneratorTable(const Curve& c, const Point& base);

    JPoint mul(const Curve& c, const U256& k) const; // requires k < 2^(4*windows)
    size_t memory_bytes() const { return table_.size() * sizeof(APoint); }

private:
    int windows_;
    std::vector<APoint> table_; // windows_ x 15, row-major
    const APoint* row(int w) const { return table_.data() + size_t(w) * 15; }
};

} // namespace ringvote::detail

#include "ringvote/ec_internal.hpp"

#include "ringvote/errors.hpp"

namespace ringvote::detail {

JPoint to_jacobian(const Curve& c, const Point& p) {
    if (p.infinity) return {};
    const PrimeField& f = c.fp();
    return JPoint{f.to_mont(p.x), f.to_mont(p.y), f.mont_one()};
}

Point from_jacobian(const Curve& c, const JPoint& p) {
    if (p.is_infinity()) return Point::at_infinity();
    const PrimeField& f = c.fp();
    U256 zinv = f.to_mont(f.inv(f.from_mont(p.z)));
    U256 zinv2 = f.mont_sqr(zinv);
    U256 x = f.mont_mul(p.x, zinv2);
    U256 y = f.mont_mul(p.y, f.mont_mul(zinv2, zinv));
    return Point::affine(f.from_mont(x), f.from_mont(y));
}

JPoint jdbl(const Curve& c, const JPoint& p) {
    if (p.is_infinity()) return p;
    const PrimeField& f = c.fp();
    if (p.y.is_zero()) return {}; // order-2 point


    U256 yy = f.mont_sqr(p.y);
    U256 s = f.mont_mul(p.x, yy);
    s = f.add(s, s);
    s = f.add(s, s); // 4 X Y^2
    U256 xx = f.mont_sqr(p.x);
    U256 m = f.add(f.add(xx, xx), xx); // 3 X^2
    if (!c.a_is_zero()) {
        U256 z4 = f.mont_sqr(f.mont_sqr(p.z));
        m = f.add(m, f.mont_mul(c.a_mont(), z4));
    }
    U256 x3 = f.sub(f.mont_sqr(m), f.add(s, s));
    U256 yyyy = f.mont_sqr(yy);
    U256 y8 = f.add(yyyy, yyyy);
    y8 = f.add(y8, y8);
    y8 = f.add(y8, y8); // 8 Y^4
    U256 y3 = f.sub(f.mont_mul(m, f.sub(s, x3)), y8);
    U256 z3 = f.mont_mul(p.y, p.z);
    z3 = f.add(z3, z3);
    return JPoint{x3, y3, z3};
}

JPoint jadd(const Curve& c, const JPoint& p, const JPoint& q) {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    const PrimeField& f = c.fp();

    U256 z1z1 = f.mont_sqr(p.z);
    U256 z2z2 = f.mont_sqr(q.z);
    U256 u1 = f.mont_mul(p.x, z2z2);
    U256 u2 = f.mont_mul(q.x, z1z1);
    U256 s1 = f.mont_mul(p.y, f.mont_mul(q.z, z2z2));
    U256 s2 = f.mont_mul(q.y, f.mont_mul(p.z, z1z1));
    U256 h = f.sub(u2, u1);
    U256 r = f.sub(s2, s1);
    if (h.is_zero()) {
        if (r.is_zero()) return jdbl(c, p);
        return {};
    }
    U256 hh = f.mont_sqr(h);
    U256 hhh = f.mont_mul(h, hh);
    U256 v = f.mont_mul(u1, hh);
    U256 x3 = f.sub(f.sub(f.mont_sqr(r), hhh), f.add(v, v));
    U256 y3 = f.sub(f.mont_mul(r, f.sub(v, x3)), f.mont_mul(s1, hhh));
    U256 z3 = f.mont_mul(h, f.mont_mul(p.z, q.z));
    return JPoint{x3, y3, z3};
}

JPoint jadd_mixed(const Curve& c, const JPoint& p, const APoint& q) {
    if (p.is_infinity()) return JPoint{q.x, q.y, c.fp().mont_one()};
    const PrimeField& f = c.fp();

    U256 z1z1 = f.mont_sqr(p.z);
    U256 u2 = f.mont_mul(q.x, z1z1);
    U256 s2 = f.mont_mul(q.y, f.mont_mul(p.z, z1z1));
    U256 h = f.sub(u2, p.x);
    U256 r = f.sub(s2, p.y);
    if (h.is_zero()) {
        if (r.is_zero()) return jdbl(c, p);
        return {};
    }
    U256 hh = f.mont_sqr(h);
    U256 hhh = f.mont_mul(h, hh);
    U256 v = f.mont_mul(p.x, hh);
    U256 x3 = f.sub(f.sub(f.mont_sqr(r), hhh), f.add(v, v));
    U256 y3 = f.sub(f.mont_mul(r, f.sub(v, x3)), f.mont_mul(p.y, hhh));
    U256 z3 = f.mont_mul(h, p.z);
    return JPoint{x3, y3, z3};
}

JPoint jneg(const Curve& c, const JPoint& p) {
    if (p.is_infinity()) return p;
    return JPoint{p.x, c.fp().neg(p.y), p.z};
}

JPoint jmul(const Curve& c, const U256& k, const JPoint& p) {
    JPoint acc{};
    int top = k.bit_length();
    for (int i = top - 1; i >= 0; i--) {
        acc = jdbl(c, acc);
        if (k.bit(i)) acc = jadd(c, acc, p);
    }
    return acc;
}

std::vector<Point> batch_normalize(const Curve& c, const std::vector<JPoint>& pts) {
    const PrimeField& f = c.fp();
    std::vector<Point> out(pts.size());

    // Montgomery's trick: running product of the z's, one inversion, unwind.
    std::vector<U256> prefix(pts.size());
    U256 run = f.mont_one();
    for (size_t i = 0; i < pts.size(); i++) {
        prefix[i] = run;
        if (!pts[i].is_infinity()) run = f.mont_mul(run, pts[i].z);
    }
    U256 run_inv = f.to_mont(f.inv(f.from_mont(run)));
    for (size_t i = pts.size(); i-- > 0;) {
        if (pts[i].is_infinity()) {
            out[i] = Point::at_infinity();
            continue;
        }
        U256 zinv = f.mont_mul(run_inv, prefix[i]);
        run_inv = f.mont_mul(run_inv, pts[i].z);
        U256 zinv2 = f.mont_sqr(zinv);
        U256 x = f.mont_mul(pts[i].x, zinv2);
        U256 y = f.mont_mul(pts[i].y, f.mont_mul(zinv2, zinv));
        out[i] = Point::affine(f.from_mont(x), f.from_mont(y));
    }
    return out;
}

GeneratorTable::GeneratorTable(const Curve& c, const Point& base) {
    windows_ = (c.scalar_field().bits() + 3) / 4;
    std::vector<JPoint> jtable(size_t(windows_) * 15);

    JPoint window_base = to_jacobian(c, base);
    for (int w = 0; w < windows_; w++) {
        JPoint* row = jtable.data() + size_t(w) * 15;
        row[0] = window_base;
        for (int j = 1; j < 15; j++) row[j] = jadd(c, row[j - 1], window_base);
        if (w + 1 < windows_) {
            // next window base = 16 * current
            window_base = jdbl(c, jdbl(c, jdbl(c, jdbl(c, window_base))));
        }
    }

    std::vector<Point> affine = batch_normalize(c, jtable);
    table_.resize(jtable.size());
    const PrimeField& f = c.fp();
    for (size_t i = 0; i < affine.size(); i++) {
        if (affine[i].infinity) {
            // only possible for a zero base; keep the slot harmless
            table_[i] = APoint{f.mont_one(), f.mont_one()};
            continue;
        }
        table_[i] = APoint{f.to_mont(affine[i].x), f.to_mont(affine[i].y)};
    }
}

JPoint GeneratorTable::mul(const Curve& c, const U256& k) const {
    JPoint acc{};
    int top_window = (k.bit_length() + 3) / 4;
    for (int w = 0; w < top_window && w < windows_; w++) {
        uint64_t digit = (k.w[w / 16] >> (4 * (w % 16))) & 0xf;
        if (digit) acc = jadd_mixed(c, acc, row(w)[digit - 1]);
    }
    return acc;
}

} // namespace ringvote::detail

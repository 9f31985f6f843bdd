#include "ringvote/curve.hpp"

#include <fstream>
#include <map>
#include <mutex>

#include <nlohmann/json.hpp>

#include "ringvote/ec_internal.hpp"
#include "ringvote/errors.hpp"

namespace ringvote {

namespace {

// Miller-Rabin with fixed bases; deterministic and ample for parameter files.
bool probably_prime(const U256& n) {
    if (n < U256::from_u64(2)) return false;
    if (n == U256::from_u64(2)) return true;
    if (!n.is_odd()) return false;
    if (n == U256::from_u64(3)) return true;
    PrimeField f(n);
    U256 n1;
    u256_sub(n1, n, U256::from_u64(1));
    U256 d = n1;
    int r = 0;
    while (!d.is_odd()) {
        U256 half;
        for (int i = 0; i < 4; i++) {
            half.w[i] = d.w[i] >> 1;
            if (i < 3) half.w[i] |= d.w[i + 1] << 63;
        }
        d = half;
        r++;
    }
    for (uint64_t base : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53}) {
        U256 a = U256::from_u64(base);
        if (a >= n1) continue;
        U256 x = f.pow(a, d);
        if (x == U256::from_u64(1) || x == n1) continue;
        bool witness = true;
        for (int i = 0; i < r - 1 && witness; i++) {
            x = f.mul(x, x);
            if (x == n1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

} // namespace

Curve::Curve(CurveParams params)
    : params_(std::move(params)), fp_(params_.p), fs_(params_.order) {
    if (params_.cofactor.is_zero()) params_.cofactor = U256::from_u64(1);
    if (!fp_.in_range(params_.a) || !fp_.in_range(params_.b)) {
        throw ValidationError("curve: coefficients out of field range");
    }
    if (params_.order <= U256::from_u64(16)) {
        throw ValidationError("curve: subgroup order too small (must exceed 16)");
    }
    if (!probably_prime(params_.p)) throw ValidationError("curve: p is not prime");
    if (!probably_prime(params_.order)) throw ValidationError("curve: order is not prime");

    // non-singularity: 4a^3 + 27b^2 != 0
    U256 a3 = fp_.mul(params_.a, fp_.mul(params_.a, params_.a));
    U256 disc = fp_.mul(U256::from_u64(4), a3);
    disc = fp_.add(disc, fp_.mul(U256::from_u64(27), fp_.mul(params_.b, params_.b)));
    if (disc.is_zero()) throw ValidationError("curve: singular (4a^3 + 27b^2 = 0)");

    a_mont_ = fp_.to_mont(params_.a);
    b_mont_ = fp_.to_mont(params_.b);

    Point g = Point::affine(params_.gx, params_.gy);
    if (!on_curve(g)) throw ValidationError("curve: generator not on curve");

    gen_table_ = std::make_unique<detail::GeneratorTable>(*this, g);

    // g * G must be the identity
    if (!detail::jmul(*this, params_.order, detail::to_jacobian(*this, g)).is_infinity()) {
        throw ValidationError("curve: order * G is not the identity");
    }
}

Curve::~Curve() = default;

bool Curve::on_curve(const Point& p) const {
    if (p.infinity) return p.x.is_zero() && p.y.is_zero();
    if (!fp_.in_range(p.x) || !fp_.in_range(p.y)) return false;
    U256 lhs = fp_.mul(p.y, p.y);
    U256 rhs = fp_.add(fp_.mul(p.x, fp_.mul(p.x, p.x)),
                       fp_.add(fp_.mul(params_.a, p.x), params_.b));
    return lhs == rhs;
}

static void require_on_curve(const Curve& c, const Point& p, const char* what) {
    if (!c.on_curve(p)) throw ValidationError(std::string(what) + ": point not on curve");
}

Point Curve::point_add(const Point& p, const Point& q) const {
    require_on_curve(*this, p, "point_add");
    require_on_curve(*this, q, "point_add");
    if (p.infinity) return q;
    if (q.infinity) return p;
    U256 lambda;
    if (p.x == q.x) {
        if (fp_.add(p.y, q.y).is_zero()) return Point::at_infinity();
        // tangent: (3x^2 + a) / 2y
        U256 num = fp_.add(fp_.mul(U256::from_u64(3), fp_.mul(p.x, p.x)), params_.a);
        lambda = fp_.mul(num, fp_.inv(fp_.add(p.y, p.y)));
    } else {
        lambda = fp_.mul(fp_.sub(q.y, p.y), fp_.inv(fp_.sub(q.x, p.x)));
    }
    U256 x3 = fp_.sub(fp_.sub(fp_.mul(lambda, lambda), p.x), q.x);
    U256 y3 = fp_.sub(fp_.mul(lambda, fp_.sub(p.x, x3)), p.y);
    return Point::affine(x3, y3);
}

Point Curve::point_neg(const Point& p) const {
    require_on_curve(*this, p, "point_neg");
    if (p.infinity) return p;
    return Point::affine(p.x, fp_.neg(p.y));
}

Point Curve::scalar_mul(const Scalar& k, const Point& p) const {
    require_on_curve(*this, p, "scalar_mul");
    if (p.infinity || k.is_zero()) return Point::at_infinity();
    return detail::from_jacobian(*this, detail::jmul(*this, k.v, detail::to_jacobian(*this, p)));
}

Point Curve::mul_generator(const Scalar& k) const {
    if (k.is_zero()) return Point::at_infinity();
    return detail::from_jacobian(*this, gen_table_->mul(*this, k.v));
}

Scalar Curve::hash_scalar(BytesView data) const {
    Digest d = sha256(data);
    return Scalar{fs_.reduce_bytes(BytesView(d.data(), d.size()))};
}

Point Curve::hash_to_point(BytesView data) const {
    constexpr uint32_t kMaxAttempts = 256;
    Bytes buf(data.begin(), data.end());
    size_t base = buf.size();
    buf.resize(base + 4);
    for (uint32_t counter = 0; counter < kMaxAttempts; counter++) {
        buf[base + 0] = uint8_t(counter >> 24);
        buf[base + 1] = uint8_t(counter >> 16);
        buf[base + 2] = uint8_t(counter >> 8);
        buf[base + 3] = uint8_t(counter);
        Digest d = sha256(buf);
        U256 x = fp_.reduce_bytes(BytesView(d.data(), d.size()));
        U256 rhs = fp_.add(fp_.mul(x, fp_.mul(x, x)), fp_.add(fp_.mul(params_.a, x), params_.b));
        auto y = fp_.sqrt(rhs);
        if (!y) continue;
        U256 y_even = y->is_odd() ? fp_.neg(*y) : *y;
        Point p = Point::affine(x, y_even);
        if (params_.cofactor != U256::from_u64(1)) {
            auto j = detail::jmul(*this, params_.cofactor, detail::to_jacobian(*this, p));
            if (j.is_infinity()) continue;
            p = detail::from_jacobian(*this, j);
        }
        if (p.infinity) continue;
        return p;
    }
    throw InternalError("hash_to_point: attempt bound exceeded");
}

Bytes Curve::serialize_point(const Point& p) const {
    require_on_curve(*this, p, "serialize_point");
    Bytes out(point_width(), 0);
    if (p.infinity) return out;
    Bytes xb = p.x.to_bytes_be(fe_width());
    Bytes yb = p.y.to_bytes_be(fe_width());
    std::copy(xb.begin(), xb.end(), out.begin());
    std::copy(yb.begin(), yb.end(), out.begin() + fe_width());
    return out;
}

Point Curve::deserialize_point(BytesView bytes) const {
    if (bytes.size() != point_width()) {
        throw ValidationError("deserialize_point: wrong length");
    }
    bool all_zero = true;
    for (uint8_t b : bytes) {
        if (b != 0) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) return Point::at_infinity();
    U256 x = U256::from_bytes_be(bytes.subspan(0, fe_width()));
    U256 y = U256::from_bytes_be(bytes.subspan(fe_width(), fe_width()));
    Point p = Point::affine(x, y);
    if (!on_curve(p)) throw ValidationError("deserialize_point: not on curve");
    return p;
}

Bytes Curve::serialize_scalar(const Scalar& s) const {
    return s.v.to_bytes_be(scalar_width());
}

Scalar Curve::deserialize_scalar(BytesView bytes) const {
    if (bytes.size() != scalar_width()) throw ValidationError("deserialize_scalar: wrong length");
    U256 v = U256::from_bytes_be(bytes);
    if (!fs_.in_range(v)) throw ValidationError("deserialize_scalar: value >= group order");
    return Scalar{v};
}

Scalar Curve::scalar_from_u64(uint64_t v) const {
    U256 u = U256::from_u64(v);
    if (!fs_.in_range(u)) {
        // reduce; only reachable for small toy orders
        Bytes be;
        append_be64(be, v);
        return Scalar{fs_.reduce_bytes(be)};
    }
    return Scalar{u};
}

Scalar Curve::random_scalar(RandomSource& rng, bool allow_zero) const {
    size_t width = scalar_width();
    int top_bits = fs_.bits() % 8;
    uint8_t mask = top_bits == 0 ? 0xff : uint8_t((1 << top_bits) - 1);
    for (int attempt = 0; attempt < 1000; attempt++) {
        Bytes b = rng.bytes(width);
        b[0] &= mask;
        U256 v = U256::from_bytes_be(b);
        if (!fs_.in_range(v)) continue;
        if (v.is_zero() && !allow_zero) continue;
        return Scalar{v};
    }
    throw InternalError("random_scalar: rejection bound exceeded");
}

CurveParams Curve::secp256k1_params() {
    CurveParams p;
    p.name = "secp256k1";
    p.p = U256::parse("0xfffffffffffffffffffffffffffffffffffffffffffffffffffffffefffffc2f");
    p.a = U256::from_u64(0);
    p.b = U256::from_u64(7);
    p.gx = U256::parse("0x79be667ef9dcbbac55a06295ce870b07029bfcdb2dce28d959f2815b16f81798");
    p.gy = U256::parse("0x483ada7726a3c4655da4fbfc0e1108a8fd17b448a68554199c47d08ffb10d4b8");
    p.order = U256::parse("0xfffffffffffffffffffffffffffffffebaaedce6af48a03bbfd25e8cd0364141");
    p.cofactor = U256::from_u64(1);
    return p;
}

CurveParams Curve::toy_params() {
    // Prime-order curve small enough for exhaustive oracles (discrete log by
    // enumeration, full subgroup listing).
    CurveParams p;
    p.name = "toy64007";
    p.p = U256::from_u64(64007);
    p.a = U256::from_u64(1);
    p.b = U256::from_u64(12);
    p.gx = U256::from_u64(0);
    p.gy = U256::from_u64(56519);
    p.order = U256::from_u64(63799);
    p.cofactor = U256::from_u64(1);
    return p;
}

const Curve& Curve::builtin(std::string_view name) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<Curve>, std::less<>> curves;
    std::lock_guard lock(mu);
    auto it = curves.find(name);
    if (it != curves.end()) return *it->second;
    CurveParams params;
    if (name == "secp256k1") {
        params = secp256k1_params();
    } else if (name == "toy64007" || name == "toy") {
        params = toy_params();
    } else {
        throw ValidationError("unknown built-in curve: " + std::string(name));
    }
    auto [pos, ok] = curves.emplace(std::string(name), std::make_unique<Curve>(params));
    return *pos->second;
}

CurveParams Curve::params_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    CurveParams p;
    p.name = j.value("name", "custom");
    auto field = [&](const char* key, const char* alt = nullptr) -> U256 {
        const char* use = j.contains(key) ? key : (alt && j.contains(alt) ? alt : nullptr);
        if (!use) throw ValidationError(std::string("curve file: missing ") + key);
        return U256::parse(j.at(use).get<std::string>());
    };
    p.p = field("p");
    p.a = field("a");
    p.b = field("b");
    p.gx = field("gx", "Gx");
    p.gy = field("gy", "Gy");
    p.order = field("g");
    p.cofactor = j.contains("h") ? U256::parse(j.at("h").get<std::string>()) : U256::from_u64(1);
    return p;
}

std::shared_ptr<const Curve> Curve::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open curve parameter file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return std::make_shared<Curve>(params_from_json_text(text));
}

} // namespace ringvote

#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "ringvote/field.hpp"
#include "ringvote/rng.hpp"

namespace ringvote {

// Affine point, standard (non-Montgomery) coordinates. The infinity marker is
// canonical: infinity always carries x = y = 0.
struct Point {
    U256 x{};
    U256 y{};
    bool infinity = true;

    static Point at_infinity() { return {}; }
    static Point affine(const U256& x, const U256& y) { return Point{x, y, false}; }

    friend bool operator==(const Point&, const Point&) = default;
};

// Element of the scalar field Z_g (g = subgroup order). Invariant: v < g.
struct Scalar {
    U256 v{};

    bool is_zero() const { return v.is_zero(); }
    friend bool operator==(const Scalar&, const Scalar&) = default;
    friend std::strong_ordering operator<=>(const Scalar&, const Scalar&) = default;
};

struct CurveParams {
    std::string name;
    U256 p;        // field prime
    U256 a, b;     // y^2 = x^3 + a x + b
    U256 gx, gy;   // generator
    U256 order;    // prime order g of the subgroup generated by G
    U256 cofactor; // |E| / g, 1 for both built-in curves
};

namespace detail {
class GeneratorTable;
}

// Short-Weierstrass group arithmetic plus the two public hash functions:
// H into the scalar field and H2P onto the curve (try-and-increment).
// Immutable after construction; all operations are pure and thread-safe.
class Curve {
public:
    explicit Curve(CurveParams params); // validates params, throws ValidationError
    ~Curve();
    Curve(const Curve&) = delete;
    Curve& operator=(const Curve&) = delete;

    const CurveParams& params() const { return params_; }
    const std::string& name() const { return params_.name; }
    const PrimeField& fp() const { return fp_; }
    const PrimeField& scalar_field() const { return fs_; }
    Point generator() const { return Point::affine(params_.gx, params_.gy); }

    size_t fe_width() const { return fp_.byte_width(); }      // per coordinate
    size_t point_width() const { return 2 * fe_width(); }     // uncompressed
    size_t scalar_width() const { return fs_.byte_width(); }

    bool on_curve(const Point& p) const;

    // Chord-tangent group law; infinity is the neutral element.
    // Off-curve inputs throw ValidationError.
    Point point_add(const Point& p, const Point& q) const;
    Point point_neg(const Point& p) const;
    Point scalar_mul(const Scalar& k, const Point& p) const;
    Point mul_generator(const Scalar& k) const;

    // H: arbitrary bytes -> scalar in {0, ..., g-1} (digest reduced mod g).
    Scalar hash_scalar(BytesView data) const;

    // H2P: arbitrary bytes -> non-infinity point in the order-g subgroup.
    // Deterministic: hash(data || counter) proposes x until x^3+ax+b is a
    // square; the even-y root is taken and the cofactor cleared.
    Point hash_to_point(BytesView data) const;

    // Uncompressed big-endian x||y, fixed width; infinity is the all-zero
    // string. Decoding validates curve membership.
    Bytes serialize_point(const Point& p) const;
    Point deserialize_point(BytesView bytes) const;

    Bytes serialize_scalar(const Scalar& s) const;
    Scalar deserialize_scalar(BytesView bytes) const;

    // Scalar-field helpers (mod g).
    Scalar s_add(const Scalar& a, const Scalar& b) const { return {fs_.add(a.v, b.v)}; }
    Scalar s_sub(const Scalar& a, const Scalar& b) const { return {fs_.sub(a.v, b.v)}; }
    Scalar s_mul(const Scalar& a, const Scalar& b) const { return {fs_.mul(a.v, b.v)}; }
    Scalar s_neg(const Scalar& a) const { return {fs_.neg(a.v)}; }
    Scalar s_inv(const Scalar& a) const { return {fs_.inv(a.v)}; }
    Scalar scalar_from_u64(uint64_t v) const;
    bool scalar_in_range(const U256& v) const { return fs_.in_range(v); }

    // Uniform scalar; excludes zero unless allow_zero.
    Scalar random_scalar(RandomSource& rng, bool allow_zero = false) const;

    // Montgomery-form curve coefficients for the internal point arithmetic.
    const U256& a_mont() const { return a_mont_; }
    const U256& b_mont() const { return b_mont_; }
    bool a_is_zero() const { return params_.a.is_zero(); }
    const detail::GeneratorTable& gen_table() const { return *gen_table_; }

    // Built-in parameter sets: "secp256k1" and "toy64007".
    static const Curve& builtin(std::string_view name);
    static CurveParams secp256k1_params();
    static CurveParams toy_params();

    // JSON parameter file: {"name"?, "p", "a", "b", "gx", "gy", "g", "h"?},
    // values as decimal or 0x-hex strings.
    static CurveParams params_from_json_text(const std::string& text);
    static std::shared_ptr<const Curve> load_file(const std::string& path);

private:
    CurveParams params_;
    PrimeField fp_;
    PrimeField fs_;
    U256 a_mont_, b_mont_;
    std::unique_ptr<detail::GeneratorTable> gen_table_;
};

} // namespace ringvote

// Exact arithmetic in the prime field F_q.

#ifndef FLAGMORSE_FIELD_HPP
#define FLAGMORSE_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace flagmorse {

namespace fp {

// Raw kernels on canonical residues in [0, q). Callers guarantee a, b < q.
inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    std::uint32_t s = a + b;
    return s >= q ? s - q : s;
}

inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return a >= b ? a - b : a + q - b;
}

inline std::uint32_t neg(std::uint32_t a, std::uint32_t q) { return a == 0 ? 0 : q - a; }

inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
    return static_cast<std::uint32_t>(std::uint64_t(a) * b % q);
}

inline std::uint32_t inv(std::uint32_t a, std::uint32_t q) {
    if (a == 0)
        throw std::domain_error("division by zero in F_" + std::to_string(q));
    // Fermat: a^(q-2) for prime q
    std::uint32_t result = 1, base = a;
    for (std::uint32_t e = q - 2; e > 0; e >>= 1) {
        if (e & 1) result = mul(result, base, q);
        base = mul(base, base, q);
    }
    return result;
}

}  // namespace fp

/// Order q of a prime field. Composite or trivial orders are rejected at
/// construction, so any FieldSpec in circulation is known valid.
class FieldSpec {
public:
    explicit FieldSpec(std::uint32_t q) : q_(q) {
        if (q_ < 2)
            throw std::invalid_argument("field order must be >= 2, got " + std::to_string(q_));
        if (q_ > 0x7fffffffu)
            throw std::invalid_argument("field order too large: " + std::to_string(q_));
        for (std::uint64_t d = 2; d * d <= q_; ++d)
            if (q_ % d == 0)
                throw std::invalid_argument("field order must be prime, got " + std::to_string(q_));
    }

    std::uint32_t order() const { return q_; }

    bool operator==(const FieldSpec&) const = default;

    std::uint32_t reduce(std::uint64_t v) const { return static_cast<std::uint32_t>(v % q_); }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return fp::add(a, b, q_); }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return fp::sub(a, b, q_); }
    std::uint32_t neg(std::uint32_t a) const { return fp::neg(a, q_); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return fp::mul(a, b, q_); }
    std::uint32_t inv(std::uint32_t a) const { return fp::inv(a, q_); }

private:
    std::uint32_t q_;
};

/// One element of F_q in canonical residue form, tagged with its field order.
struct FieldElem {
    std::uint32_t value;
    std::uint32_t q;

    bool operator==(const FieldElem&) const = default;
};

inline FieldElem make_elem(const FieldSpec& spec, std::uint64_t v) {
    return FieldElem{spec.reduce(v), spec.order()};
}

namespace detail {
inline void require_same_field(const FieldElem& a, const FieldElem& b) {
    if (a.q != b.q)
        throw std::invalid_argument("field mismatch: F_" + std::to_string(a.q) + " vs F_" +
                                    std::to_string(b.q));
}
}  // namespace detail

inline FieldElem fp_add(FieldElem a, FieldElem b) {
    detail::require_same_field(a, b);
    return {fp::add(a.value, b.value, a.q), a.q};
}

inline FieldElem fp_sub(FieldElem a, FieldElem b) {
    detail::require_same_field(a, b);
    return {fp::sub(a.value, b.value, a.q), a.q};
}

inline FieldElem fp_mul(FieldElem a, FieldElem b) {
    detail::require_same_field(a, b);
    return {fp::mul(a.value, b.value, a.q), a.q};
}

inline FieldElem fp_neg(FieldElem a) { return {fp::neg(a.value, a.q), a.q}; }

inline FieldElem fp_inv(FieldElem a) { return {fp::inv(a.value, a.q), a.q}; }

}  // namespace flagmorse

#endif

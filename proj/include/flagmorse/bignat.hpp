// Arbitrary-precision nonnegative integers for closed-form cell counts.

#ifndef FLAGMORSE_BIGNAT_HPP
#define FLAGMORSE_BIGNAT_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace flagmorse {

/// Unsigned big integer, base 2^32 limbs, little-endian, no trailing zero limbs.
class BigNat {
public:
    BigNat() = default;

    BigNat(std::uint64_t v) {
        if (v != 0) {
            limbs_.push_back(static_cast<std::uint32_t>(v));
            if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
        }
    }

    bool is_zero() const { return limbs_.empty(); }

    BigNat& operator+=(const BigNat& other) {
        if (limbs_.size() < other.limbs_.size()) limbs_.resize(other.limbs_.size(), 0);
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t sum = carry + limbs_[i];
            if (i < other.limbs_.size()) sum += other.limbs_[i];
            limbs_[i] = static_cast<std::uint32_t>(sum);
            carry = sum >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        return *this;
    }

    friend BigNat operator+(BigNat a, const BigNat& b) { return a += b; }

    BigNat& operator*=(std::uint64_t m) {
        if (m == 0 || is_zero()) {
            limbs_.clear();
            return *this;
        }
        std::uint64_t lo = m & 0xffffffffu, hi = m >> 32;
        BigNat shifted;  // this * hi, shifted one limb
        if (hi) {
            shifted.limbs_.assign(limbs_.size() + 2, 0);
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < limbs_.size(); ++i) {
                std::uint64_t prod = std::uint64_t(limbs_[i]) * hi + carry;
                shifted.limbs_[i + 1] = static_cast<std::uint32_t>(prod);
                carry = prod >> 32;
            }
            shifted.limbs_[limbs_.size() + 1] = static_cast<std::uint32_t>(carry);
            shifted.trim();
        }
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < limbs_.size(); ++i) {
            std::uint64_t prod = std::uint64_t(limbs_[i]) * lo + carry;
            limbs_[i] = static_cast<std::uint32_t>(prod);
            carry = prod >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        trim();
        if (hi) *this += shifted;
        return *this;
    }

    friend BigNat operator*(BigNat a, std::uint64_t m) { return a *= m; }

    static BigNat pow(std::uint64_t base, std::uint64_t exp) {
        BigNat result(1);
        for (std::uint64_t i = 0; i < exp; ++i) result *= base;
        return result;
    }

    bool operator==(const BigNat&) const = default;

    std::strong_ordering operator<=>(const BigNat& other) const {
        if (limbs_.size() != other.limbs_.size())
            return limbs_.size() <=> other.limbs_.size();
        for (std::size_t i = limbs_.size(); i-- > 0;)
            if (limbs_[i] != other.limbs_[i]) return limbs_[i] <=> other.limbs_[i];
        return std::strong_ordering::equal;
    }

    bool fits_u64() const { return limbs_.size() <= 2; }

    std::uint64_t as_u64() const {
        if (!fits_u64()) throw std::overflow_error("BigNat does not fit in 64 bits");
        std::uint64_t v = 0;
        if (limbs_.size() > 1) v = std::uint64_t(limbs_[1]) << 32;
        if (!limbs_.empty()) v |= limbs_[0];
        return v;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::vector<std::uint32_t> work(limbs_);
        std::string digits;
        while (!work.empty()) {
            // divide by 10^9, collecting the remainder
            std::uint64_t rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | work[i];
                work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
                rem = cur % 1000000000u;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            std::string chunk = std::to_string(rem);
            if (work.empty()) {
                digits.insert(0, chunk);
            } else {
                digits.insert(0, std::string(9 - chunk.size(), '0') + chunk);
            }
        }
        return digits;
    }

private:
    void trim() {
        while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    }

    std::vector<std::uint32_t> limbs_;
};

}  // namespace flagmorse

#endif

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace dcm {

/// Finite field F_q, q = p^m an odd prime power.
///
/// Elements are packed little-endian base-p digit vectors: the element with
/// digits (d_0, ..., d_{m-1}) relative to the canonical irreducible modulus is
/// stored as the integer sum d_i * p^i, always in [0, q).  For prime q the
/// packed value is just the residue.  Instances are interned: Fq::get returns
/// a reference that stays valid for the lifetime of the process, so dependent
/// types hold plain pointers.
class Fq {
public:
    using Elem = std::uint32_t;

    /// Field with canonical modulus (least monic irreducible of degree m over
    /// F_p in the canonical polynomial order).  q must be an odd prime power.
    static const Fq& get(std::uint32_t q);
    /// Field with an explicit monic irreducible modulus over F_p, given as
    /// m+1 base-p digits in ascending degree order.
    static const Fq& get(std::uint32_t p, std::uint32_t m, const std::vector<std::uint32_t>& modulus);

    std::uint32_t q() const { return q_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    /// Quadratic character of a: +1 square unit, -1 non-square, 0 for a = 0.
    int legendre(Elem a) const {
        if (a == 0) return 0;
        return (log_[a] % 2 == 0) ? 1 : -1;
    }
    bool is_square(Elem a) const { return a == 0 || log_[a] % 2 == 0; }
    /// Deterministic square root: the root whose packed value is smaller.
    std::optional<Elem> sqrt(Elem a) const;

    /// Smallest non-square unit in packed order (exists, q odd).
    Elem least_nonsquare() const { return least_nonsquare_; }
    Elem generator() const { return exp_[1]; }

    /// Digits of a in ascending base-p order, length m.
    std::vector<std::uint32_t> digits(Elem a) const;
    Elem from_digits(const std::vector<std::uint32_t>& d) const;
    /// Reduce an arbitrary integer into the prime subfield.
    Elem from_int(long long v) const;

private:
    Fq(std::uint32_t p, std::uint32_t m, std::vector<std::uint32_t> modulus);
    Fq(const Fq&) = delete;
    Fq& operator=(const Fq&) = delete;

    std::uint32_t p_, m_, q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<Elem> add_;   // q*q table
    std::vector<Elem> neg_;   // q table
    std::vector<Elem> exp_;   // exp_[i] = g^i, i in [0, q-1)
    std::vector<std::uint32_t> log_;  // inverse of exp_ on units
    Elem least_nonsquare_ = 0;
};

}  // namespace dcm

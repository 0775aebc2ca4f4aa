#include "polya/square_class.hpp"
#include "polya/errors.hpp"

#include <algorithm>
#include <map>

namespace polya {

SquareClass::SquareClass(int sign, std::vector<Int> primes)
    : sign_(sign), primes_(std::move(primes)) {
    if (sign_ != 1 && sign_ != -1)
        throw invalid_input("SquareClass: sign must be +1 or -1");
    if (!std::is_sorted(primes_.begin(), primes_.end()) ||
        std::adjacent_find(primes_.begin(), primes_.end()) != primes_.end())
        throw invalid_input("SquareClass: primes must be strictly increasing");
    for (const Int& p : primes_)
        if (p < 2) throw invalid_input("SquareClass: entries must be primes >= 2");
}

Int SquareClass::value() const {
    Int v = sign_;
    for (const Int& p : primes_) v *= p;
    return v;
}

bool SquareClass::operator<(const SquareClass& other) const {
    if (sign_ != other.sign_) return sign_ > other.sign_; // +1 sorts first
    return primes_ < other.primes_;
}

SquareClass sq_mul(const SquareClass& a, const SquareClass& b) {
    std::vector<Int> sym;
    std::set_symmetric_difference(a.primes().begin(), a.primes().end(),
                                  b.primes().begin(), b.primes().end(),
                                  std::back_inserter(sym));
    return SquareClass(a.sign() * b.sign(), std::move(sym));
}

namespace {

// Coordinates: index 0 is the sign, then the occurring primes in increasing
// order. Rows are F2 vectors packed into u64 words.
struct F2Basis {
    std::vector<Int> coord_primes;
    std::vector<std::vector<std::uint64_t>> rows; // echelon, leading bits decreasing... leading index increasing

    std::size_t words() const { return (coord_primes.size() + 1 + 63) / 64; }

    std::vector<std::uint64_t> encode(const SquareClass& c) const {
        std::vector<std::uint64_t> v(words(), 0);
        auto set_bit = [&](std::size_t i) { v[i / 64] |= (std::uint64_t{1} << (i % 64)); };
        if (c.sign() < 0) set_bit(0);
        for (const Int& p : c.primes()) {
            auto it = std::lower_bound(coord_primes.begin(), coord_primes.end(), p);
            if (it == coord_primes.end() || *it != p) return {}; // outside coordinate span
            set_bit(1 + std::size_t(it - coord_primes.begin()));
        }
        return v;
    }

    static int leading(const std::vector<std::uint64_t>& v) {
        for (std::size_t w = 0; w < v.size(); ++w)
            if (v[w] != 0) return int(w * 64 + std::countr_zero(v[w]));
        return -1;
    }

    // Reduce v against the basis; returns true if v reduces to zero.
    bool reduce(std::vector<std::uint64_t>& v) const {
        for (const auto& row : rows) {
            int lead = leading(row);
            if (lead >= 0 && (v[lead / 64] >> (lead % 64)) & 1)
                for (std::size_t w = 0; w < v.size(); ++w) v[w] ^= row[w];
        }
        return std::all_of(v.begin(), v.end(), [](std::uint64_t w) { return w == 0; });
    }
};

} // namespace

Int SquareClassSubgroup::order() const {
    Int o = 1;
    return o << basis_.size();
}

bool SquareClassSubgroup::contains(const SquareClass& c) const {
    if (c.is_identity()) return true;
    // Rebuild the elimination over the subgroup's own coordinates.
    F2Basis f2;
    for (const SquareClass& b : basis_)
        for (const Int& p : b.primes())
            f2.coord_primes.push_back(p);
    std::sort(f2.coord_primes.begin(), f2.coord_primes.end());
    f2.coord_primes.erase(std::unique(f2.coord_primes.begin(), f2.coord_primes.end()),
                          f2.coord_primes.end());
    // A prime outside the basis support can never cancel.
    for (const Int& p : c.primes())
        if (!std::binary_search(f2.coord_primes.begin(), f2.coord_primes.end(), p))
            return false;
    for (const SquareClass& b : basis_) {
        auto row = f2.encode(b);
        f2.reduce(row);
        if (F2Basis::leading(row) >= 0) f2.rows.push_back(std::move(row));
    }
    auto v = f2.encode(c);
    return f2.reduce(v);
}

SquareClassSubgroup subgroup_generated(std::span<const SquareClass> gens) {
    F2Basis f2;
    for (const SquareClass& g : gens)
        for (const Int& p : g.primes())
            f2.coord_primes.push_back(p);
    std::sort(f2.coord_primes.begin(), f2.coord_primes.end());
    f2.coord_primes.erase(std::unique(f2.coord_primes.begin(), f2.coord_primes.end()),
                          f2.coord_primes.end());

    std::vector<SquareClass> reduced_gens;
    for (const SquareClass& g : gens) {
        auto v = f2.encode(g);
        if (f2.reduce(v)) continue;
        f2.rows.push_back(v);
        // Recover the reduced class from the reduced vector.
        int sign = (v[0] & 1) ? -1 : 1;
        std::vector<Int> primes;
        for (std::size_t i = 0; i < f2.coord_primes.size(); ++i)
            if ((v[(i + 1) / 64] >> ((i + 1) % 64)) & 1) primes.push_back(f2.coord_primes[i]);
        reduced_gens.emplace_back(sign, std::move(primes));
    }

    // Full reduced echelon form: sort rows by leading coordinate and
    // back-substitute so the basis is canonical.
    std::vector<std::pair<int, std::size_t>> order;
    for (std::size_t i = 0; i < f2.rows.size(); ++i)
        order.emplace_back(F2Basis::leading(f2.rows[i]), i);
    std::sort(order.begin(), order.end());
    std::vector<std::vector<std::uint64_t>> rows;
    for (auto& [lead, idx] : order) rows.push_back(f2.rows[idx]);
    for (std::size_t i = rows.size(); i-- > 0;) {
        int lead = F2Basis::leading(rows[i]);
        for (std::size_t j = 0; j < i; ++j)
            if ((rows[j][lead / 64] >> (lead % 64)) & 1)
                for (std::size_t w = 0; w < rows[j].size(); ++w) rows[j][w] ^= rows[i][w];
    }

    SquareClassSubgroup s;
    for (const auto& v : rows) {
        int sign = (v[0] & 1) ? -1 : 1;
        std::vector<Int> primes;
        for (std::size_t i = 0; i < f2.coord_primes.size(); ++i)
            if ((v[(i + 1) / 64] >> ((i + 1) % 64)) & 1) primes.push_back(f2.coord_primes[i]);
        s.basis_.emplace_back(sign, std::move(primes));
    }
    return s;
}

SquareClassSubgroup subgroup_generated(std::initializer_list<SquareClass> gens) {
    return subgroup_generated(std::span<const SquareClass>(gens.begin(), gens.size()));
}

} // namespace polya

#include "mvl/point_set.hpp"

#include <bit>

#include "mvl/error.hpp"

namespace mvl {

Space::Space(unsigned base, unsigned dim) : base_(base), dim_(dim) {
    if (base == 0) throw InputError("base must be nonempty");
    std::uint64_t n = 1;
    for (unsigned i = 0; i < dim; ++i) {
        n *= base;
        if (n > kMaxPoints)
            throw InputError("space " + std::to_string(base) + "^" + std::to_string(dim) + " exceeds " +
                             std::to_string(kMaxPoints) + " points");
    }
    size_ = static_cast<std::uint32_t>(n);
    strides_.resize(dim);
    std::uint32_t s = 1;
    for (unsigned k = dim; k-- > 0;) {
        strides_[k] = s;
        s *= base;
    }
}

std::uint32_t Space::encode(std::span<const unsigned> tuple) const {
    if (tuple.size() != dim_)
        throw InputError("tuple of length " + std::to_string(tuple.size()) + " in a space of dimension " +
                         std::to_string(dim_));
    std::uint32_t i = 0;
    for (unsigned x : tuple) {
        if (x >= base_) throw InputError("point coordinate " + std::to_string(x) + " outside base of size " +
                                         std::to_string(base_));
        i = i * base_ + x;
    }
    return i;
}

std::vector<unsigned> Space::decode(std::uint32_t point) const {
    std::vector<unsigned> t(dim_);
    for (unsigned k = 0; k < dim_; ++k) t[k] = coord(point, k);
    return t;
}

void Space::check_coord(unsigned k) const {
    if (k >= dim_)
        throw InputError("coordinate " + std::to_string(k) + " outside window of dimension " + std::to_string(dim_));
}

PointSet::PointSet(const Space& space) : space_(space) { words_.assign((space.size() + 63) / 64, 0); }

PointSet PointSet::full(const Space& space) {
    PointSet s(space);
    for (auto& w : s.words_) w = ~Word{0};
    s.trim();
    return s;
}

PointSet PointSet::from_tuples(const Space& space, const std::vector<std::vector<unsigned>>& tuples) {
    PointSet s(space);
    for (const auto& t : tuples) s.insert(space.encode(t));
    return s;
}

PointSet PointSet::from_bits(const Space& space, Word bits) {
    PointSet s(space);
    s.words_[0] = bits;
    s.trim();
    return s;
}

void PointSet::trim() noexcept {
    const unsigned rem = space_.size() & 63;
    if (rem) words_.back() &= (Word{1} << rem) - 1;
}

std::uint32_t PointSet::count() const noexcept {
    std::uint32_t c = 0;
    for (Word w : words_) c += static_cast<std::uint32_t>(std::popcount(w));
    return c;
}

bool PointSet::empty() const noexcept {
    for (Word w : words_)
        if (w) return false;
    return true;
}

bool PointSet::is_full() const noexcept { return count() == space_.size(); }

void PointSet::check_same(const PointSet& o) const {
    if (!(space_ == o.space_)) throw InputError("point sets over different spaces");
}

bool PointSet::subset_of(const PointSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & ~o.words_[i]) return false;
    return true;
}

bool PointSet::disjoint(const PointSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i] & o.words_[i]) return false;
    return true;
}

PointSet& PointSet::operator|=(const PointSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
}

PointSet& PointSet::operator&=(const PointSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
}

PointSet& PointSet::operator-=(const PointSet& o) {
    check_same(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
}

PointSet PointSet::operator~() const {
    PointSet r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
}

void PointSet::for_each(const std::function<void(std::uint32_t)>& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        for (Word w = words_[i]; w; w &= w - 1)
            f(static_cast<std::uint32_t>(i * 64 + static_cast<unsigned>(std::countr_zero(w))));
}

std::vector<std::uint32_t> PointSet::points() const {
    std::vector<std::uint32_t> out;
    for_each([&](std::uint32_t p) { out.push_back(p); });
    return out;
}

std::vector<std::vector<unsigned>> PointSet::tuples() const {
    std::vector<std::vector<unsigned>> out;
    for_each([&](std::uint32_t p) { out.push_back(space_.decode(p)); });
    return out;
}

std::size_t PointSet::hash() const noexcept {
    std::size_t h = 0xcbf29ce484222325ull ^ space_.size();
    for (Word w : words_) h = (h ^ w) * 0x100000001b3ull;
    return h;
}

PointSet cyl(unsigned k, const PointSet& x) {
    const Space& sp = x.space();
    sp.check_coord(k);
    const std::uint32_t s = sp.stride(k);
    PointSet r(sp);
    x.for_each([&](std::uint32_t i) {
        const std::uint32_t start = i - sp.coord(i, k) * s;
        if (r.contains(start)) return;
        for (unsigned v = 0; v < sp.base(); ++v) r.insert(start + v * s);
    });
    return r;
}

PointSet inner_cyl(unsigned k, const PointSet& x) { return ~cyl(k, ~x); }

PointSet diag(const Space& space, unsigned k, unsigned l) {
    space.check_coord(k);
    space.check_coord(l);
    PointSet r(space);
    for (std::uint32_t i = 0; i < space.size(); ++i)
        if (space.coord(i, k) == space.coord(i, l)) r.insert(i);
    return r;
}

std::vector<unsigned> subst_point(const Space& space, std::span<const unsigned> s, unsigned k, unsigned x) {
    space.check_coord(k);
    if (x >= space.base()) throw InputError("point " + std::to_string(x) + " outside base");
    std::vector<unsigned> t(s.begin(), s.end());
    space.encode(t);  // validates length and range
    t[k] = x;
    return t;
}

PointSet witness_set(unsigned y, unsigned k, const PointSet& x) {
    const Space& sp = x.space();
    sp.check_coord(k);
    if (y >= sp.base()) throw InputError("point " + std::to_string(y) + " outside base");
    const std::uint32_t s = sp.stride(k);
    PointSet r(sp);
    for (std::uint32_t i = 0; i < sp.size(); ++i) {
        const std::uint32_t j = i - sp.coord(i, k) * s + y * s;
        if (x.contains(j)) r.insert(i);
    }
    return r;
}

std::vector<unsigned> dim_set(const PointSet& x) {
    std::vector<unsigned> out;
    for (unsigned k = 0; k < x.space().dim(); ++k)
        if (!(cyl(k, x) == x)) out.push_back(k);
    return out;
}

}  // namespace mvl

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace mvl {

inline constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 20;

/// U^d with U = {0, ..., base-1}. Points are indexed lexicographically, coordinate 0 most significant.
/// dim 0 is allowed: U^0 holds exactly one (empty) point, used for nullary relations.
class Space {
public:
    Space() = default;
    /// Throws InputError when base is 0 or base^dim exceeds kMaxPoints.
    Space(unsigned base, unsigned dim);

    unsigned base() const noexcept { return base_; }
    unsigned dim() const noexcept { return dim_; }
    std::uint32_t size() const noexcept { return size_; }

    /// Index distance between points differing by one in coordinate k.
    std::uint32_t stride(unsigned k) const noexcept { return strides_[k]; }
    unsigned coord(std::uint32_t point, unsigned k) const noexcept { return (point / strides_[k]) % base_; }

    std::uint32_t encode(std::span<const unsigned> tuple) const;
    std::vector<unsigned> decode(std::uint32_t point) const;

    void check_coord(unsigned k) const;

    bool operator==(const Space& o) const noexcept { return base_ == o.base_ && dim_ == o.dim_; }

private:
    unsigned base_ = 1;
    unsigned dim_ = 0;
    std::uint32_t size_ = 1;
    boost::container::small_vector<std::uint32_t, 4> strides_;
};

/// A subset of U^d as a dense bitset.
class PointSet {
public:
    using Word = std::uint64_t;

    PointSet() = default;
    explicit PointSet(const Space& space);

    static PointSet full(const Space& space);
    static PointSet from_tuples(const Space& space, const std::vector<std::vector<unsigned>>& tuples);
    /// Set whose bit i is bit i of `bits`; only meaningful for spaces with at most 64 points.
    static PointSet from_bits(const Space& space, Word bits);

    const Space& space() const noexcept { return space_; }

    bool contains(std::uint32_t point) const noexcept { return (words_[point >> 6] >> (point & 63)) & 1u; }
    void insert(std::uint32_t point) noexcept { words_[point >> 6] |= Word{1} << (point & 63); }
    void erase(std::uint32_t point) noexcept { words_[point >> 6] &= ~(Word{1} << (point & 63)); }

    std::uint32_t count() const noexcept;
    bool empty() const noexcept;
    bool is_full() const noexcept;
    bool subset_of(const PointSet& o) const;
    bool disjoint(const PointSet& o) const;

    PointSet& operator|=(const PointSet& o);
    PointSet& operator&=(const PointSet& o);
    /// Set difference.
    PointSet& operator-=(const PointSet& o);
    PointSet operator~() const;

    friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
    friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
    friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

    bool operator==(const PointSet& o) const noexcept { return space_ == o.space_ && words_ == o.words_; }

    /// Members in increasing index order.
    void for_each(const std::function<void(std::uint32_t)>& f) const;
    std::vector<std::uint32_t> points() const;
    std::vector<std::vector<unsigned>> tuples() const;

    std::span<const Word> words() const noexcept { return {words_.data(), words_.size()}; }
    std::size_t hash() const noexcept;

private:
    void check_same(const PointSet& o) const;
    void trim() noexcept;

    Space space_;
    boost::container::small_vector<Word, 1> words_{0};
};

/// C_k X: points s such that s(k/x) is in X for some x.
PointSet cyl(unsigned k, const PointSet& x);
/// -C_k -X.
PointSet inner_cyl(unsigned k, const PointSet& x);
/// {s : s_k = s_l}.
PointSet diag(const Space& space, unsigned k, unsigned l);

/// s with coordinate k replaced by x.
std::vector<unsigned> subst_point(const Space& space, std::span<const unsigned> s, unsigned k, unsigned x);
/// y o_k X: points s such that s(k/y) is in X.
PointSet witness_set(unsigned y, unsigned k, const PointSet& x);

/// {k < d : C_k X != X}.
std::vector<unsigned> dim_set(const PointSet& x);

}  // namespace mvl

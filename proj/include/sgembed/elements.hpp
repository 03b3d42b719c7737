#ifndef SGEMBED_ELEMENTS_HPP_
#define SGEMBED_ELEMENTS_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sgembed {

enum class ElementKind { transformation, bipartition, binary_relation };

//! Total or partial self-map of {1..d}, written by listing images: [2,1,1].
//! Image 0 is the "undefined" marker (text form `-`), so partial maps and
//! partial injections live at their native degree.
class Transformation {
 public:
  static constexpr uint32_t undefined = 0;

  //! images are 1-based values, one per point; 0 marks an undefined point.
  Transformation(uint32_t degree, std::vector<uint32_t> images);

  static Transformation identity(uint32_t degree);

  uint32_t degree() const noexcept {
    return _degree;
  }

  //! Image of a 1-based point, or 0 when undefined there.
  uint32_t image(uint32_t point) const {
    return _images[point - 1];
  }

  const std::vector<uint32_t>& images() const noexcept {
    return _images;
  }

  bool is_total() const;
  bool is_injective() const;  // on its domain of definition
  bool is_permutation() const;

  auto operator<=>(const Transformation&) const = default;

 private:
  uint32_t _degree;
  std::vector<uint32_t> _images;
};

//! Set partition of the 2d points {1..d, 1'..d'}. Point p is position p-1,
//! point p' is position d+p-1. Stored as the block id of each position,
//! normalized so that block ids are numbered by first appearance.
class Bipartition {
 public:
  Bipartition(uint32_t degree, std::vector<uint32_t> block_of);

  static Bipartition identity(uint32_t degree);  // blocks {i, i'}

  uint32_t degree() const noexcept {
    return _degree;
  }

  const std::vector<uint32_t>& block_of() const noexcept {
    return _block_of;
  }

  uint32_t block_count() const;

  auto operator<=>(const Bipartition&) const = default;

 private:
  uint32_t _degree;
  std::vector<uint32_t> _block_of;
};

//! d x d boolean matrix; composition is the relational product.
class BinaryRelation {
 public:
  //! bits are row-major 0/1 values, d*d of them.
  BinaryRelation(uint32_t degree, std::vector<uint8_t> bits);

  static BinaryRelation identity(uint32_t degree);

  uint32_t degree() const noexcept {
    return _degree;
  }

  bool at(uint32_t i, uint32_t j) const {  // 0-based
    return _bits[static_cast<size_t>(i) * _degree + j] != 0;
  }

  const std::vector<uint8_t>& bits() const noexcept {
    return _bits;
  }

  auto operator<=>(const BinaryRelation&) const = default;

 private:
  uint32_t _degree;
  std::vector<uint8_t> _bits;
};

using Element = std::variant<Transformation, Bipartition, BinaryRelation>;

//! Left-to-right action everywhere: (s then t)(x) = t(s(x)), so a table
//! entry i*j means "apply i first, then j".
Transformation compose(const Transformation& s, const Transformation& t);
Bipartition compose(const Bipartition& a, const Bipartition& b);
BinaryRelation compose(const BinaryRelation& a, const BinaryRelation& b);
Element compose(const Element& a, const Element& b);

//! Relabels the element's points by the permutation g: the result is
//! g^-1 * s * g. Composition-preserving: conjugate(xy,g) =
//! conjugate(x,g) * conjugate(y,g).
Transformation conjugate(const Transformation& s, const Transformation& g);
Bipartition conjugate(const Bipartition& a, const Transformation& g);
BinaryRelation conjugate(const BinaryRelation& r, const Transformation& g);
Element conjugate(const Element& e, const Transformation& g);

//! Vertical flip (rows swapped): the involutive anti-automorphism every
//! diagram monoid carries, flip(ab) = flip(b) flip(a).
Bipartition flip(const Bipartition& a);

//! Matrix transpose: the involutive anti-automorphism of relation monoids.
BinaryRelation transpose(const BinaryRelation& r);

//! The graph of a (partial) map as a relation: (x, s(x)) for defined x.
BinaryRelation relation_of(const Transformation& s);

ElementKind kind_of(const Element& e);
uint32_t degree_of(const Element& e);

//! Canonical byte encoding: two elements are equal iff their encodings are
//! equal. Within one kind and degree, the lexicographic order of encodings
//! is the family enumeration order.
void encode(const Element& e, std::string& out);
std::string encode(const Element& e);

//! Text forms: [2,1,1] and [2,-,1]; {{1,2'},{2,1'}}; 01|00.
std::string format_element(const Element& e);

//! Inverse of format_element; degree is inferred from the text. The line
//! number is only used to report errors.
Element parse_element(std::string_view text, ElementKind kind, std::size_t line = 1);

}  // namespace sgembed

#endif  // SGEMBED_ELEMENTS_HPP_

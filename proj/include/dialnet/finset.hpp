#pragma once

// Finite sets and total maps between them.
//
// Composite sets (products, coproducts, function spaces) are addressed by
// index: element i of S x T is the pair (i / |T|, i % |T|), and element i of
// S^T is the map whose value tuple, read in T's order, is the base-|S|
// expansion of i with the first argument most significant. Structured
// elements are decoded from the index on request, so constructions on
// carriers are pure integer arithmetic.

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "dialnet/error.hpp"

namespace dialnet {

// ---------------------------------------------------------------- limits

/// Process-wide caps on materialized carriers. The hard cap defaults to
/// 10,000 elements; carriers above `warn` are built but reported through the
/// warning hook.
struct Limits {
  std::atomic<std::size_t> cap{10000};
  std::atomic<std::size_t> warn{4096};
  std::function<void(std::string_view)> on_warning;
};

inline Limits& limits() {
  static Limits instance;
  return instance;
}

/// Restores the previous cap when it leaves scope.
class ScopedCap {
public:
  explicit ScopedCap(std::size_t cap) : saved_(limits().cap.exchange(cap)) {}
  ~ScopedCap() { limits().cap.store(saved_); }
  ScopedCap(const ScopedCap&) = delete;
  ScopedCap& operator=(const ScopedCap&) = delete;

private:
  std::size_t saved_;
};

// ---------------------------------------------------------------- elements

/// An element identifier: an atom name, or a pair, a tagged injection, or a
/// function table built from other elements.
class Element {
public:
  enum class Kind { atom, pair, inl, inr, table };

  Element() = default;

  static Element atom(std::string name) {
    Element e;
    e.name_ = std::move(name);
    return e;
  }
  static Element pair(Element a, Element b) {
    Element e(Kind::pair);
    e.parts_.reserve(2);
    e.parts_.push_back(std::move(a));
    e.parts_.push_back(std::move(b));
    return e;
  }
  static Element inl(Element a) {
    Element e(Kind::inl);
    e.parts_.push_back(std::move(a));
    return e;
  }
  static Element inr(Element a) {
    Element e(Kind::inr);
    e.parts_.push_back(std::move(a));
    return e;
  }
  /// Function table; entries are (argument, value) in the domain's order.
  static Element table(std::vector<std::pair<Element, Element>> entries) {
    Element e(Kind::table);
    e.parts_.reserve(entries.size() * 2);
    for (auto& [arg, val] : entries) {
      e.parts_.push_back(std::move(arg));
      e.parts_.push_back(std::move(val));
    }
    return e;
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Element& first() const { return parts_.at(0); }
  const Element& second() const { return parts_.at(1); }
  const Element& payload() const { return parts_.at(0); }
  std::size_t table_size() const { return parts_.size() / 2; }
  const Element& table_arg(std::size_t k) const { return parts_.at(2 * k); }
  const Element& table_value(std::size_t k) const { return parts_.at(2 * k + 1); }

  /// Atom name, or compact JSON text for composite elements. Used as the key
  /// of map tables in serialized form.
  std::string key() const {
    if (kind_ == Kind::atom) return name_;
    std::string out;
    write_json(out);
    return out;
  }

  /// Compact JSON text: atoms as strings, pairs as 2-arrays, injections as
  /// {"inl":..}/{"inr":..}, tables as objects keyed by argument key.
  void write_json(std::string& out) const {
    switch (kind_) {
      case Kind::atom:
        write_string(out, name_);
        break;
      case Kind::pair:
        out += '[';
        first().write_json(out);
        out += ',';
        second().write_json(out);
        out += ']';
        break;
      case Kind::inl:
      case Kind::inr:
        out += kind_ == Kind::inl ? "{\"inl\":" : "{\"inr\":";
        payload().write_json(out);
        out += '}';
        break;
      case Kind::table:
        out += '{';
        for (std::size_t k = 0; k < table_size(); ++k) {
          if (k) out += ',';
          write_string(out, table_arg(k).key());
          out += ':';
          table_value(k).write_json(out);
        }
        out += '}';
        break;
    }
  }

  friend bool operator==(const Element&, const Element&) = default;
  friend std::strong_ordering operator<=>(const Element& a, const Element& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.name_ <=> b.name_; c != 0) return c;
    return a.parts_ <=> b.parts_;
  }

private:
  explicit Element(Kind k) : kind_(k) {}

  static void write_string(std::string& out, std::string_view s) {
    static constexpr char hex[] = "0123456789abcdef";
    out += '"';
    for (const char ch : s) {
      const auto c = static_cast<unsigned char>(ch);
      if (c == '"' || c == '\\') {
        out += '\\';
        out += ch;
      } else if (c < 0x20) {
        out += "\\u00";
        out += hex[c >> 4];
        out += hex[c & 0xf];
      } else {
        out += ch;
      }
    }
    out += '"';
  }

  Kind kind_ = Kind::atom;
  std::string name_;
  std::vector<Element> parts_;
};

// ---------------------------------------------------------------- sets

class FinSet {
public:
  enum class Kind { listed, product, coproduct, exponential };

  /// The empty set.
  FinSet() : FinSet(std::vector<Element>{}) {}

  /// A set listing the given elements in order; duplicates are rejected.
  explicit FinSet(std::vector<Element> elements) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::listed;
    node->size = elements.size();
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (!node->index.emplace(elements[i], i).second) {
        throw ParseError("duplicate element '" + elements[i].key() + "' in finite set");
      }
    }
    node->listed = std::move(elements);
    node_ = std::move(node);
  }

  static FinSet atoms(const std::vector<std::string>& names) {
    std::vector<Element> elems;
    elems.reserve(names.size());
    for (const auto& n : names) elems.push_back(Element::atom(n));
    return FinSet(std::move(elems));
  }

  /// Atoms named prefix0, prefix1, ...
  static FinSet numbered(std::string_view prefix, std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
    return atoms(names);
  }

  /// The one-point set {•}.
  static FinSet singleton() { return atoms({"*"}); }

  /// S x T in lexicographic order.
  static FinSet product(const FinSet& s, const FinSet& t) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::product;
    node->left = s.node_;
    node->right = t.node_;
    node->size = checked_mul(s.size(), t.size());
    return FinSet(std::move(node));
  }

  /// S + T: the inl copies of S, then the inr copies of T.
  static FinSet coproduct(const FinSet& s, const FinSet& t) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::coproduct;
    node->left = s.node_;
    node->right = t.node_;
    node->size = s.size() + t.size();
    return FinSet(std::move(node));
  }

  /// S^T: every total map T -> S. Throws ResourceLimit past the cap.
  static FinSet exponential(const FinSet& s, const FinSet& t) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::exponential;
    node->left = s.node_;
    node->right = t.node_;
    const std::size_t cap = limits().cap.load();
    const std::size_t base = s.size();
    const std::size_t n = t.size();
    // strides[k] = base^(n-1-k)
    node->strides.assign(n, 1);
    std::size_t size = 1;
    for (std::size_t k = n; k-- > 0;) {
      node->strides[k] = size;
      if (base != 0 && size > cap / base) {
        throw ResourceLimit("function space of size " + std::to_string(base) + "^" +
                            std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
      }
      size *= base;
    }
    if (size > cap) {
      throw ResourceLimit("function space of size " + std::to_string(size) +
                          " exceeds the cap of " + std::to_string(cap));
    }
    if (size > limits().warn.load() && limits().on_warning) {
      limits().on_warning("materializing a function space of " + std::to_string(size) +
                          " elements");
    }
    node->size = size;
    return FinSet(std::move(node));
  }

  Kind kind() const { return node_->kind; }
  std::size_t size() const { return node_->size; }
  bool empty() const { return node_->size == 0; }

  /// Factors of a product/coproduct/exponential (base S and exponent T for S^T).
  FinSet left() const { return FinSet(node_->left); }
  FinSet right() const { return FinSet(node_->right); }

  Element element(std::size_t i) const {
    if (i >= size()) throw NotInDomain("element index " + std::to_string(i) + " out of range");
    return node_->decode(i);
  }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(node_->decode(i));
    return out;
  }

  std::optional<std::size_t> index_of(const Element& e) const { return node_->find(e); }

  bool contains(const Element& e) const { return index_of(e).has_value(); }

  std::size_t require_index(const Element& e) const {
    if (auto i = index_of(e)) return *i;
    throw NotInDomain("element '" + e.key() + "' is not in the set");
  }

  // Index arithmetic on composite sets. These assume the matching kind.

  std::size_t pair_index(std::size_t s, std::size_t t) const { return s * node_->right->size + t; }
  std::pair<std::size_t, std::size_t> split_pair(std::size_t i) const {
    const std::size_t n = node_->right->size;
    return {i / n, i % n};
  }
  std::size_t inl_index(std::size_t s) const { return s; }
  std::size_t inr_index(std::size_t t) const { return node_->left->size + t; }
  /// For a coproduct: (is_left, index within the summand).
  std::pair<bool, std::size_t> split_sum(std::size_t i) const {
    const std::size_t n = node_->left->size;
    return i < n ? std::pair{true, i} : std::pair{false, i - n};
  }
  /// For an exponential S^T: the value (index in S) of map i at argument k of T.
  std::size_t apply_index(std::size_t i, std::size_t k) const {
    return (i / node_->strides[k]) % node_->left->size;
  }
  /// For an exponential S^T: the index of the map with the given value tuple.
  std::size_t map_index(std::span<const std::size_t> values) const {
    std::size_t i = 0;
    for (std::size_t k = 0; k < values.size(); ++k) i += values[k] * node_->strides[k];
    return i;
  }

  friend bool operator==(const FinSet& a, const FinSet& b) { return Node::equal(*a.node_, *b.node_); }

private:
  struct Node {
    Kind kind = Kind::listed;
    std::size_t size = 0;
    std::vector<Element> listed;
    std::map<Element, std::size_t> index;
    std::shared_ptr<const Node> left, right;
    std::vector<std::size_t> strides;

    Element decode(std::size_t i) const {
      switch (kind) {
        case Kind::listed:
          return listed[i];
        case Kind::product:
          return Element::pair(left->decode(i / right->size), right->decode(i % right->size));
        case Kind::coproduct:
          return i < left->size ? Element::inl(left->decode(i))
                                : Element::inr(right->decode(i - left->size));
        case Kind::exponential: {
          std::vector<std::pair<Element, Element>> entries;
          entries.reserve(right->size);
          for (std::size_t k = 0; k < right->size; ++k) {
            entries.emplace_back(right->decode(k), left->decode((i / strides[k]) % left->size));
          }
          return Element::table(std::move(entries));
        }
      }
      return {};
    }

    std::optional<std::size_t> find(const Element& e) const {
      switch (kind) {
        case Kind::listed: {
          auto it = index.find(e);
          if (it == index.end()) return std::nullopt;
          return it->second;
        }
        case Kind::product: {
          if (e.kind() != Element::Kind::pair) return std::nullopt;
          auto a = left->find(e.first());
          auto b = right->find(e.second());
          if (!a || !b) return std::nullopt;
          return *a * right->size + *b;
        }
        case Kind::coproduct: {
          if (e.kind() == Element::Kind::inl) {
            auto a = left->find(e.payload());
            return a ? std::optional(*a) : std::nullopt;
          }
          if (e.kind() == Element::Kind::inr) {
            auto b = right->find(e.payload());
            return b ? std::optional(left->size + *b) : std::nullopt;
          }
          return std::nullopt;
        }
        case Kind::exponential: {
          if (e.kind() != Element::Kind::table || e.table_size() != right->size) return std::nullopt;
          std::size_t i = 0;
          for (std::size_t k = 0; k < right->size; ++k) {
            auto arg = right->find(e.table_arg(k));
            if (!arg || *arg != k) return std::nullopt;
            auto val = left->find(e.table_value(k));
            if (!val) return std::nullopt;
            i += *val * strides[k];
          }
          return i;
        }
      }
      return std::nullopt;
    }

    static bool equal(const Node& a, const Node& b) {
      if (&a == &b) return true;
      if (a.size != b.size) return false;
      if (a.kind == b.kind) {
        if (a.kind == Kind::listed) return a.listed == b.listed;
        return equal(*a.left, *b.left) && equal(*a.right, *b.right);
      }
      for (std::size_t i = 0; i < a.size; ++i) {
        if (a.decode(i) != b.decode(i)) return false;
      }
      return true;
    }
  };

  explicit FinSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::size_t checked_mul(std::size_t a, std::size_t b) {
    if (a != 0 && b > static_cast<std::size_t>(-1) / a) throw ResourceLimit("product set too large");
    return a * b;
  }

  std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------- maps

/// A total map, stored as the image index of every domain element.
class FinMap {
public:
  FinMap() = default;

  FinMap(FinSet domain, FinSet codomain, std::vector<std::size_t> table)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
    if (table_.size() != domain_.size()) {
      throw CarrierMismatch("map table has " + std::to_string(table_.size()) +
                            " entries for a domain of size " + std::to_string(domain_.size()));
    }
    for (const auto v : table_) {
      if (v >= codomain_.size()) throw CarrierMismatch("map image outside its codomain");
    }
  }

  template <class Fn>
  static FinMap tabulate(FinSet domain, FinSet codomain, Fn&& fn) {
    std::vector<std::size_t> table(domain.size());
    for (std::size_t i = 0; i < table.size(); ++i) table[i] = fn(i);
    return FinMap(std::move(domain), std::move(codomain), std::move(table));
  }

  const FinSet& domain() const { return domain_; }
  const FinSet& codomain() const { return codomain_; }
  std::span<const std::size_t> table() const { return table_; }

  std::size_t operator()(std::size_t i) const { return table_[i]; }

  std::size_t at(std::size_t i) const {
    if (i >= table_.size()) throw NotInDomain("index " + std::to_string(i) + " not in the domain");
    return table_[i];
  }

  friend bool operator==(const FinMap& a, const FinMap& b) {
    return a.table_ == b.table_ && a.domain_ == b.domain_ && a.codomain_ == b.codomain_;
  }

private:
  FinSet domain_, codomain_;
  std::vector<std::size_t> table_;
};

inline FinSet product(const FinSet& s, const FinSet& t) { return FinSet::product(s, t); }
inline FinSet coproduct(const FinSet& s, const FinSet& t) { return FinSet::coproduct(s, t); }
/// All total maps T -> S.
inline FinSet exponential(const FinSet& s, const FinSet& t) { return FinSet::exponential(s, t); }

inline FinMap identity_map(const FinSet& s) {
  return FinMap::tabulate(s, s, [](std::size_t i) { return i; });
}

/// g . f; throws DomainMismatch unless codomain(f) == domain(g).
inline FinMap compose_map(const FinMap& g, const FinMap& f) {
  if (!(f.codomain() == g.domain())) {
    throw DomainMismatch("cannot compose: codomain of the first map differs from domain of the second");
  }
  return FinMap::tabulate(f.domain(), g.codomain(), [&](std::size_t i) { return g(f(i)); });
}

inline Element apply(const FinMap& f, const Element& s) {
  const auto i = f.domain().index_of(s);
  if (!i) throw NotInDomain("element '" + s.key() + "' is not in the domain of the map");
  return f.codomain().element(f(*i));
}

/// Visits every total map domain -> codomain as an index table, in
/// lexicographic order of tables. Stops early when fn returns false.
template <class Fn>
void for_each_table(std::size_t domain_size, std::size_t codomain_size, Fn&& fn) {
  if (codomain_size == 0 && domain_size > 0) return;
  std::vector<std::size_t> table(domain_size, 0);
  while (true) {
    if constexpr (std::is_same_v<decltype(fn(std::span<const std::size_t>(table))), bool>) {
      if (!fn(std::span<const std::size_t>(table))) return;
    } else {
      fn(std::span<const std::size_t>(table));
    }
    std::size_t k = domain_size;
    while (k > 0) {
      --k;
      if (++table[k] < codomain_size) break;
      table[k] = 0;
      if (k == 0) return;
    }
    if (domain_size == 0) return;
  }
}

}  // namespace dialnet

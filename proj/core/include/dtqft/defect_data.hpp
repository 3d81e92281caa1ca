#pragma once
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dtqft/errors.hpp"

namespace dtqft {

enum class Sign : int { Minus = -1, Plus = 1 };

inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
inline int sign_value(Sign s) { return static_cast<int>(s); }
inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

struct SignedLabel {
  std::string label;
  Sign sign = Sign::Plus;

  // order: label first, then '+' < '-'
  auto operator<=>(const SignedLabel& o) const {
    if (auto c = label <=> o.label; c != 0) return c;
    return -sign_value(sign) <=> -sign_value(o.sign);
  }
  bool operator==(const SignedLabel&) const = default;
};

inline SignedLabel flipped(SignedLabel x) {
  x.sign = flip(x.sign);
  return x;
}
std::string to_string(const SignedLabel& x);
// "g+" / "g-" / "g" (implicit +)
SignedLabel parse_signed_label(const std::string& s);

using LinearWord = std::vector<SignedLabel>;

// reverse order and flip every sign (the # operation)
LinearWord hash_word(const LinearWord& w);
std::string to_string(const LinearWord& w);

// Cyclic word stored in its lexicographically minimal rotation.
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(LinearWord entries);

  const LinearWord& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  static LinearWord canonical_rotation(const LinearWord& w);
  // offset k such that rotating w left by k yields the canonical rotation
  static std::size_t canonical_offset(const LinearWord& w);

  bool operator==(const CyclicWord& o) const { return entries_ == o.entries_; }
  auto operator<=>(const CyclicWord& o) const { return entries_ <=> o.entries_; }

 private:
  LinearWord entries_;
};

LinearWord rotate_left(const LinearWord& w, std::size_t k);

class GroupTable {
 public:
  GroupTable() = default;
  // throws GroupError when the table is not a group
  GroupTable(std::vector<std::string> elements, std::vector<std::vector<int>> product);

  static GroupTable cyclic(int n, const std::string& gen = "g");
  static GroupTable product_of(const GroupTable& a, const GroupTable& b);
  static GroupTable symmetric3();

  std::size_t order() const { return elements_.size(); }
  const std::vector<std::string>& elements() const { return elements_; }
  int index(const std::string& name) const;  // LabelError if unknown
  bool contains(const std::string& name) const;
  int mul(int a, int b) const { return product_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int identity() const { return identity_; }
  const std::string& name(int i) const { return elements_[i]; }
  const std::vector<std::vector<int>>& table() const { return product_; }

  // product of g_i^{eps_i} over a signed word (labels are element names)
  int word_product(const LinearWord& w) const;

 private:
  std::vector<std::string> elements_;
  std::vector<std::vector<int>> product_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

ValidationReport validate_group_table(const std::vector<std::string>& elements,
                                      const std::vector<std::vector<int>>& product);

// A D_1 element: either a cyclic word (m >= 1 or m = 0 with a d3 anchor).
struct D1Element {
  std::string id;
  CyclicWord word;
  std::string d3;  // image when word is empty
};

enum class DefectFamily { Explicit, Group, RT };

class DefectData {
 public:
  std::vector<std::string> d3;
  std::vector<std::string> d2;
  std::map<std::string, std::string> s, t;
  std::vector<D1Element> d1;  // explicit part
  DefectFamily family = DefectFamily::Explicit;
  std::optional<GroupTable> group;       // family Group
  std::vector<std::string> rt_objects;   // family RT
  int max_word_len = 8;

  bool has_d2(const std::string& x) const { return s.count(x) > 0; }
  bool has_d3(const std::string& u) const;

  // membership of a D_1 element (id may be empty for oracle families)
  // whose folding-map image is w.
  bool accepts(const std::string& d1_id, const CyclicWord& w) const;
  // membership test on the image only
  bool accepts_word(const CyclicWord& w) const;

  // explicit list, or bounded enumeration for oracle families
  std::vector<D1Element> enumerate_d1(int max_len) const;
  std::vector<D1Element> enumerate_d1() const { return enumerate_d1(max_word_len); }

  std::string neutral_label() const;  // identity element for group data
};

enum class Endpoint { Source, Target };

std::string signed_endpoint(const DefectData& dd, const SignedLabel& x, Endpoint which);

// chain violations: positions i with s(w[i+1]) != t(w[i])
std::vector<std::size_t> chain_violations(const DefectData& dd, const LinearWord& w,
                                          bool cyclic);

ValidationReport validate_defect_data(const DefectData& dd);

DefectData build_group_defect_data(const GroupTable& g);
DefectData build_rt_defect_data(const std::vector<std::string>& object_labels);

// all linear words of length m over D_2 x {+,-} (brute force, small m only)
std::vector<LinearWord> all_signed_words(const std::vector<std::string>& labels, int m);

}  // namespace dtqft

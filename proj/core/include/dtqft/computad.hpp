#pragma once
#include <map>
#include <string>
#include <vector>

#include "dtqft/defect_data.hpp"

namespace dtqft {

// Word of K_1 generators; an empty word carries its K_2 anchor.
struct Word {
  std::vector<std::string> entries;
  std::string anchor;

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;
};

struct Computad {
  std::vector<std::string> k2, k1, k0;
  std::map<std::string, std::string> sigma1, tau1;  // k1 -> k2
  std::map<std::string, Word> sigma0, tau0;          // k0 -> words
  // k1 ids that are signed D_2 labels, and their involution (x,e) -> (x,-e)
  std::map<std::string, std::string> k1_flip;

  std::string word_source(const Word& w) const;
  std::string word_target(const Word& w) const;
};

ValidationReport validate_computad(const Computad& k);

std::vector<Word> allowed_words(const Computad& k, int m);
std::vector<Word> allowed_words_brute_force(const Computad& k, int m);

Word reverse_word(const Computad& k, const Word& w);
Word concat_words(const Computad& k, const Word& a, const Word& b);

// K1 id of a signed label, e.g. "g:+"
std::string k1_id(const SignedLabel& x);

// All (A, A') with A' concatenated with A^# cyclically equal to w, (|A|,|A'|) != (0,0).
std::vector<std::pair<LinearWord, LinearWord>> splittings(const CyclicWord& w);

Computad build_computad(const DefectData& dd, int max_word_len);

}  // namespace dtqft

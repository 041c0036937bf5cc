#include "doctest.h"

#include "obk/words.hpp"

using namespace obk;

TEST_CASE("free reduction and inverse") {
  Word w({1, 2, -2, 3});  // x1 x2 x2^-1 x3 -> x1 x3
  CHECK(w.letters() == std::vector<Letter>{1, 3});
  CHECK((w * w.inverse()).empty());
  CHECK((w.inverse() * w).empty());
}

TEST_CASE("abelianization is a homomorphism") {
  std::vector<std::string> names{"x1", "x2", "x3"};
  Word u = parse_word("x1 x2^-1 x1", names);
  Word v = parse_word("x2 x3^2", names);
  CHECK((u * v).abelianized(3) == IntVec(u.abelianized(3) + v.abelianized(3)));
  Word comm = u * v * u.inverse() * v.inverse();
  CHECK(comm.abelianized(3).isZero());
}

TEST_CASE("cyclic reduction and conjugacy") {
  std::vector<std::string> names{"a", "b"};
  Word w = parse_word("a b a b^-1 a^-1", names);  // conjugate of a
  CHECK(w.cyclically_reduced() == parse_word("a", names));
  CHECK(w.conjugate_to(parse_word("a", names)));
  CHECK(!w.conjugate_to(parse_word("b", names)));
  CHECK(parse_word("a b", names).conjugate_to(parse_word("b a", names)));
}

TEST_CASE("word round trip through text") {
  std::vector<std::string> names{"a1", "b1", "d1"};
  Word w = parse_word("a1^2 b1^-1 d1", names);
  CHECK(parse_word(word_to_string(w, names), names) == w);
  CHECK(word_to_string(Word(), names) == "1");
  CHECK_THROWS_AS(parse_word("zz", names), std::invalid_argument);
}

TEST_CASE("generator map application and composition") {
  // sigma: x1 -> x1 x2 x1^-1, x2 -> x1 (Artin generator)
  GeneratorMap s = artin_generator(2, 0, false);
  GeneratorMap si = artin_generator(2, 0, true);
  CHECK(s.compose_after(si).is_identity());
  CHECK(si.compose_after(s).is_identity());

  // The braid relation sigma1 sigma2 sigma1 = sigma2 sigma1 sigma2 in Aut(F_3).
  GeneratorMap s1 = artin_generator(3, 0, false);
  GeneratorMap s2 = artin_generator(3, 1, false);
  GeneratorMap lhs = s1.compose_after(s2).compose_after(s1);
  GeneratorMap rhs = s2.compose_after(s1).compose_after(s2);
  CHECK(lhs == rhs);
}

TEST_CASE("pure braid full twist is conjugation by the boundary word") {
  // A12 A13 A23 = conjugation by x1 x2 x3, with the rightmost map applied
  // first. This anchors the composition convention used for twist words.
  int n = 3;
  GeneratorMap s1 = artin_generator(n, 0, false);
  GeneratorMap s2 = artin_generator(n, 1, false);
  GeneratorMap s2i = artin_generator(n, 1, true);
  GeneratorMap a12 = s1.compose_after(s1);
  GeneratorMap a23 = s2.compose_after(s2);
  GeneratorMap a13 = s2.compose_after(a12).compose_after(s2i);
  GeneratorMap full = a12.compose_after(a13).compose_after(a23);

  Word delta({1, 2, 3});
  for (int i = 0; i < n; ++i)
    CHECK(full.image(i) == Word::generator(i).conjugated_by(delta));
}

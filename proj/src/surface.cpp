#include "obk/surface.hpp"

#include <sstream>

namespace obk {

Surface::Surface(int genus, int boundary_count, std::vector<std::string> generator_names,
                 std::vector<Word> boundary_words, IntMat intersection_matrix)
    : genus_(genus),
      boundary_count_(boundary_count),
      generator_names_(std::move(generator_names)),
      boundary_words_(std::move(boundary_words)),
      intersection_matrix_(std::move(intersection_matrix)) {
  if (boundary_count_ < 1) throw std::invalid_argument("surface needs at least one boundary component");
  if (static_cast<int>(boundary_words_.size()) != boundary_count_)
    throw std::invalid_argument("boundary word count mismatch");
  const int n = rank();
  if (intersection_matrix_.rows() != n || intersection_matrix_.cols() != n)
    throw std::invalid_argument("intersection matrix size mismatch");
}

void Surface::add_curve(Curve c) {
  if (curve_index_.count(c.name)) throw std::invalid_argument("duplicate curve name '" + c.name + "'");
  curve_index_[c.name] = curves_.size();
  curves_.push_back(std::move(c));
}

const Curve& Surface::curve(const std::string& name) const {
  auto it = curve_index_.find(name);
  if (it == curve_index_.end()) throw std::out_of_range("unknown curve '" + name + "'");
  return curves_[it->second];
}

Surface make_surface(int genus, int boundary_count) {
  if (genus < 0) throw std::invalid_argument("negative genus");
  if (boundary_count < 1) throw std::invalid_argument("open books need binding: boundary_count >= 1");
  const int g = genus, r = boundary_count;
  const int n = 2 * g + r - 1;

  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(n));
  for (int j = 1; j <= g; ++j) {
    names.push_back("a" + std::to_string(j));
    names.push_back("b" + std::to_string(j));
  }
  for (int i = 1; i <= r - 1; ++i) names.push_back("d" + std::to_string(i));

  std::vector<Word> boundary;
  for (int i = 1; i <= r - 1; ++i) boundary.push_back(Word::generator(2 * g + i - 1));
  Word last;
  for (int j = 0; j < g; ++j) {
    Word a = Word::generator(2 * j), b = Word::generator(2 * j + 1);
    last = last * a * b * a.inverse() * b.inverse();
  }
  for (int i = 0; i < r - 1; ++i) last = last * Word::generator(2 * g + i);
  boundary.push_back(last.inverse());

  IntMat m = IntMat::Zero(n, n);
  for (int j = 0; j < g; ++j) {
    m(2 * j, 2 * j + 1) = 1;   // <a_j, b_j> = +1
    m(2 * j + 1, 2 * j) = -1;
  }
  return Surface(g, r, std::move(names), std::move(boundary), std::move(m));
}

IntVec homology_class(const Surface& s, const Word& w) { return w.abelianized(s.rank()); }

Int pairing(const Surface& s, const IntVec& x, const IntVec& y) {
  if (x.size() != s.rank() || y.size() != s.rank())
    throw std::invalid_argument("pairing: vector length mismatch");
  return x.dot(s.intersection_matrix() * y);
}

Curve make_curve(const Surface& s, std::string name, Word word, CurveKind kind) {
  Curve c;
  c.name = std::move(name);
  c.homology = word.abelianized(s.rank());
  c.word = std::move(word);
  c.kind = kind;
  return c;
}

namespace {

// Transvection x -> x + <c,x> c as a matrix; shared with mcg but needed here
// for the declared-automorphism consistency check.
IntMat transvection_matrix(const Surface& s, const IntVec& c) {
  const int n = s.rank();
  IntMat m = IntMat::Identity(n, n);
  IntVec row = s.intersection_matrix().transpose() * c;  // row_j = <c, e_j>
  for (int j = 0; j < n; ++j) m.col(j) += row[j] * c;
  return m;
}

}  // namespace

Diagnostics validate_curve(const Surface& s, const Curve& c) {
  Diagnostics d;
  const int n = s.rank();
  if (c.word.empty() && n > 0) d.failures.push_back(c.name + ": empty curve word");
  IntVec ab;
  try {
    ab = c.word.abelianized(n);
  } catch (const std::exception& e) {
    d.failures.push_back(c.name + ": word uses undeclared generators (" + e.what() + ")");
    return d;
  }
  if (c.homology.size() != n || c.homology != ab)
    d.failures.push_back(c.name + ": homology mismatch with abelianized word");
  if (c.kind.boundary_parallel) {
    if (c.kind.boundary_index < 1 || c.kind.boundary_index > s.boundary_count()) {
      d.failures.push_back(c.name + ": boundary index out of range");
    } else if (ab != s.boundary_class(c.kind.boundary_index)) {
      d.failures.push_back(c.name + ": class differs from its boundary word");
    }
  }
  if (c.pants) {
    for (const auto& end : {c.pants->x, c.pants->y}) {
      if (!s.has_curve(end) || !s.curve(end).kind.boundary_parallel)
        d.failures.push_back(c.name + ": pants record endpoint '" + end + "' is not a declared boundary-parallel curve");
    }
  }
  if (c.pi1_automorphism) {
    const GeneratorMap& f = *c.pi1_automorphism;
    if (f.rank() != n) {
      d.failures.push_back(c.name + ": automorphism rank mismatch");
      return d;
    }
    for (int i = 1; i <= s.boundary_count(); ++i) {
      const Word& bw = s.boundary_words()[static_cast<std::size_t>(i - 1)];
      if (!f.apply(bw).conjugate_to(bw))
        d.failures.push_back(c.name + ": automorphism moves boundary word " + std::to_string(i) +
                             " out of its conjugacy class");
    }
    if (f.abelianized(n) != transvection_matrix(s, ab))
      d.failures.push_back(c.name + ": abelianized automorphism is not the transvection along the curve class");
    if (c.pi1_automorphism_inverse) {
      const GeneratorMap& g = *c.pi1_automorphism_inverse;
      if (g.rank() != n || !f.compose_after(g).is_identity() || !g.compose_after(f).is_identity())
        d.failures.push_back(c.name + ": declared inverse does not invert the automorphism");
    }
  } else if (c.pi1_automorphism_inverse) {
    d.failures.push_back(c.name + ": inverse automorphism declared without the automorphism");
  }
  return d;
}

Diagnostics validate_surface(const Surface& s) {
  Diagnostics d;
  const int n = s.rank();
  if (n != 2 * s.genus() + s.boundary_count() - 1)
    d.failures.push_back("generator count differs from 2g + r - 1");
  IntVec sum = IntVec::Zero(n);
  for (int i = 1; i <= s.boundary_count(); ++i) sum += s.boundary_class(i);
  if (!sum.isZero()) d.failures.push_back("boundary classes do not sum to zero");
  if (s.intersection_matrix() != -s.intersection_matrix().transpose())
    d.failures.push_back("intersection matrix is not antisymmetric");
  for (const Curve& c : s.curves())
    for (const auto& f : validate_curve(s, c).failures) d.failures.push_back(f);
  return d;
}

}  // namespace obk

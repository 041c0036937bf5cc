#include "obk/words.hpp"

#include <map>
#include <sstream>

namespace obk {

GeneratorMap artin_generator(int n, int i, bool inverse) {
  if (i < 0 || i + 1 >= n) throw std::out_of_range("artin generator out of range");
  std::vector<Word> im;
  im.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) im.push_back(Word::generator(j));
  Word xi = Word::generator(i), xj = Word::generator(i + 1);
  if (!inverse) {
    im[static_cast<std::size_t>(i)] = xi * xj * xi.inverse();
    im[static_cast<std::size_t>(i + 1)] = xi;
  } else {
    im[static_cast<std::size_t>(i)] = xj;
    im[static_cast<std::size_t>(i + 1)] = xj.inverse() * xi * xj;
  }
  return GeneratorMap(std::move(im));
}

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::ostringstream os;
  const auto& ls = w.letters();
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long long power = static_cast<long long>(j - i) * letter_sign(ls[i]);
    if (i) os << ' ';
    os << names.at(static_cast<std::size_t>(letter_index(ls[i])));
    if (power != 1) os << '^' << power;
    i = j;
  }
  return os.str();
}

Word parse_word(const std::string& text, const std::vector<std::string>& names) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i) index[names[i]] = static_cast<int>(i);
  std::vector<Letter> letters;
  std::istringstream is(text);
  std::string token;
  while (is >> token) {
    if (token == "1") continue;
    std::string name = token;
    long long power = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      name = token.substr(0, caret);
      try {
        power = std::stoll(token.substr(caret + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent in word token '" + token + "'");
      }
    }
    auto it = index.find(name);
    if (it == index.end()) throw std::invalid_argument("unknown generator '" + name + "'");
    Letter l = static_cast<Letter>(it->second + 1) * (power < 0 ? -1 : 1);
    for (long long i = 0; i < (power < 0 ? -power : power); ++i) letters.push_back(l);
  }
  return Word(std::move(letters));
}

}  // namespace obk

#ifndef ULPA_FREE_WORD_HPP
#define ULPA_FREE_WORD_HPP

#include "ulpa/ultragraph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ulpa {

// e or e^{-1}.
struct Letter {
    EdgeId edge;
    bool inverse = false;
    auto operator<=>(const Letter&) const = default;
};

// A reduced word in the free group on the edges. The empty word is the identity 0.
class FreeWord {
public:
    FreeWord() = default;
    explicit FreeWord(std::vector<Letter> letters);  // reduces
    static FreeWord positive(const Path& p);

    const std::vector<Letter>& letters() const { return letters_; }
    bool is_identity() const { return letters_.empty(); }
    std::size_t length() const { return letters_.size(); }

    FreeWord inverse() const;
    // Reduced concatenation.
    FreeWord operator*(const FreeWord& other) const;

    auto operator<=>(const FreeWord&) const = default;

private:
    std::vector<Letter> letters_;
};

FreeWord word_multiply(const FreeWord& u, const FreeWord& v);

// t = a b^{-1} with a, b arbitrary edge sequences (not checked to be paths).
struct WordShape {
    Path a;
    Path b;
};
std::optional<WordShape> word_shape(const FreeWord& t);

// r(a) ∩ r(b) with r(empty path) = all vertices.
VertexSet shape_range(const Ultragraph& g, const WordShape& shape);

// X_t is nonempty exactly when t = a b^{-1} with a, b paths and r(a) ∩ r(b) ≠ ∅.
bool word_admissible(const Ultragraph& g, const FreeWord& t);
// The shape of an admissible word; throws InadmissibleWord otherwise.
WordShape admissible_shape(const Ultragraph& g, const FreeWord& t);

std::string to_string(const Ultragraph& g, const FreeWord& t);

}  // namespace ulpa

#endif  // ULPA_FREE_WORD_HPP

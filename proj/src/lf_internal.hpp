#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "semrerank/lf.hpp"

namespace semrerank::detail {

// Text of an atom (a leaf) as it appears on the surface, quoted if needed.
std::string atom_text(const LfNode& node, Formalism formalism);
// Text of a functor head.
std::string head_text(const LfNode& node, Formalism formalism);

// Glues an already-rendered head and already-rendered children into the
// surface string of an application, using single spaces between tokens.
std::string compose(const std::string& head, const std::vector<std::string>& children,
                    Formalism formalism);

std::string quote(std::string_view text, char quote_char);

}  // namespace semrerank::detail

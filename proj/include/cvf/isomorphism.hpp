#pragma once

#include "cvf/rdf.hpp"

namespace cvf {

// True when a bijection between the two graphs' blank nodes maps one triple
// set onto the other exactly. Ground terms must match verbatim.
bool isomorphic(const Graph& a, const Graph& b);

}  // namespace cvf

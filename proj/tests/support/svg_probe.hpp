// Minimal attribute extraction from the SVG emitted by the renderer, for
// structural assertions. Not a general XML parser.
#ifndef CONTRA_TESTS_SVG_PROBE_HPP_
#define CONTRA_TESTS_SVG_PROBE_HPP_

#include <map>
#include <string>
#include <vector>

namespace svg_probe {

using Attributes = std::map<std::string, std::string>;

// Every <tag ...> element whose class attribute equals `cls`.
std::vector<Attributes> elements(const std::string& svg, const std::string& tag,
                                 const std::string& cls);

double number(const Attributes& a, const std::string& key);

}  // namespace svg_probe

#endif  // CONTRA_TESTS_SVG_PROBE_HPP_

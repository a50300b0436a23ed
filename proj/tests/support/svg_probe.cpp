#include "svg_probe.hpp"

#include <regex>
#include <stdexcept>

namespace svg_probe {

std::vector<Attributes> elements(const std::string& svg, const std::string& tag,
                                 const std::string& cls) {
  const std::regex element("<" + tag + "\\s([^>]*)>");
  const std::regex attribute("([a-zA-Z0-9_:-]+)=\"([^\"]*)\"");
  std::vector<Attributes> out;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), element); it != std::sregex_iterator();
       ++it) {
    Attributes attrs;
    const std::string body = (*it)[1];
    for (auto a = std::sregex_iterator(body.begin(), body.end(), attribute);
         a != std::sregex_iterator(); ++a) {
      attrs[(*a)[1]] = (*a)[2];
    }
    if (attrs.count("class") && attrs["class"] == cls) out.push_back(std::move(attrs));
  }
  return out;
}

double number(const Attributes& a, const std::string& key) {
  const auto it = a.find(key);
  if (it == a.end()) throw std::out_of_range("attribute '" + key + "' not present");
  return std::stod(it->second);
}

}  // namespace svg_probe

#include "cicpc/channel_io.hpp"

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace cicpc {

namespace {

using nlohmann::json;

std::size_t line_of(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

std::size_t read_card(const json& alphabets, const char* name) {
  if (!alphabets.contains(name))
    throw MalformedChannel(std::string("missing field alphabets.") + name);
  const auto& v = alphabets.at(name);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
    throw MalformedChannel(std::string("field alphabets.") + name + " must be a positive integer");
  return v.get<std::size_t>();
}

void read_level(const json& node, const std::array<std::size_t, 5>& dims, std::size_t depth,
                std::string path, std::vector<double>& out) {
  if (!node.is_array())
    throw MalformedChannel("field " + path + " must be an array");
  if (node.size() != dims[depth]) {
    std::ostringstream os;
    os << "field " << path << " has " << node.size() << " entries, expected " << dims[depth];
    throw MalformedChannel(os.str());
  }
  for (std::size_t i = 0; i < node.size(); ++i) {
    std::string child = path + "[" + std::to_string(i) + "]";
    if (depth + 1 == dims.size()) {
      if (!node[i].is_number()) throw MalformedChannel("field " + child + " must be a number");
      out.push_back(node[i].get<double>());
    } else {
      read_level(node[i], dims, depth + 1, child, out);
    }
  }
}

}  // namespace

std::string format_double(double value, int digits) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

ChannelLaw parse_channel(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << "line " << line_of(text, e.byte) << ": " << e.what();
    throw MalformedChannel(os.str());
  }
  if (!doc.is_object()) throw MalformedChannel("top level must be a JSON object");
  if (!doc.contains("alphabets")) throw MalformedChannel("missing field alphabets");
  if (!doc.contains("transition")) throw MalformedChannel("missing field transition");
  const auto& al = doc.at("alphabets");
  if (!al.is_object()) throw MalformedChannel("field alphabets must be an object");

  AlphabetSpec spec{read_card(al, "x1"), read_card(al, "x2"), read_card(al, "xr1"),
                    read_card(al, "y1"), read_card(al, "y2")};
  spec.check();
  std::vector<double> values;
  values.reserve(spec.tensor_size());
  read_level(doc.at("transition"), {spec.x1, spec.x2, spec.xr1, spec.y1, spec.y2}, 0,
             "transition", values);
  return ChannelLaw(spec, std::move(values));
}

ChannelLaw load_channel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedChannel("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel(buf.str());
}

std::string format_channel(const ChannelLaw& law) {
  const auto& a = law.alphabets();
  std::ostringstream os;
  os << "{\n  \"alphabets\": {\"x1\": " << a.x1 << ", \"x2\": " << a.x2 << ", \"xr1\": " << a.xr1
     << ", \"y1\": " << a.y1 << ", \"y2\": " << a.y2 << "},\n  \"transition\": [";
  for (std::size_t x1 = 0; x1 < a.x1; ++x1) {
    os << (x1 ? ",\n    [" : "\n    [");
    for (std::size_t x2 = 0; x2 < a.x2; ++x2) {
      os << (x2 ? ",\n     [" : "\n     [");
      for (std::size_t xr1 = 0; xr1 < a.xr1; ++xr1) {
        os << (xr1 ? ", [" : "[");
        for (std::size_t y1 = 0; y1 < a.y1; ++y1) {
          os << (y1 ? ", [" : "[");
          for (std::size_t y2 = 0; y2 < a.y2; ++y2) {
            if (y2) os << ", ";
            os << format_double(law(x1, x2, xr1, y1, y2), 17);
          }
          os << "]";
        }
        os << "]";
      }
      os << "]";
    }
    os << "]";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

void save_channel(const ChannelLaw& law, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << format_channel(law);
}

}  // namespace cicpc

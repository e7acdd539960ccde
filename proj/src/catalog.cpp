#include <array>
#include <utility>
#include <vector>

#include "divalg/identity.hpp"

namespace divalg {

namespace {

// The 45-row degree-5 catalog (three x, one y, one z per side).
const std::array<const char*, 45> kTable1 = {{
    "(((xx)y)x)z=(x(xy))(xz)",  // 1
    "(((xx)y)x)z=(xx)((yx)z)",  // 2
    "(((xx)y)x)z=(xx)(y(xz))",  // 3
    "(((xx)y)x)z=x(((xy)x)z)",  // 4
    "(((xx)y)x)z=x((x(yx))z)",  // 5
    "(((xx)y)x)z=x((xy)(xz))",  // 6
    "(((xx)y)x)z=x(x((yx)z))",  // 7
    "(((xx)y)x)z=x(x(y(xz)))",  // 8
    "((x(xy))x)z=((xx)y)(xz)",  // 9
    "((x(xy))x)z=(xx)((yx)z)",  // 10
    "((x(xy))x)z=(xx)(y(xz))",  // 11
    "((x(xy))x)z=x((x(yx))z)",  // 12
    "((x(xy))x)z=x(x((yx)z))",  // 13
    "((x(xy))x)z=x(x(y(xz)))",  // 14
    "((xx)(yx))z=((xx)y)(xz)",  // 15
    "((xx)(yx))z=(x(xy))(xz)",  // 16
    "((xx)(yx))z=(xx)(y(xz))",  // 17
    "((xx)(yx))z=x(((xy)x)z)",  // 18
    "((xx)(yx))z=x((xy)(xz))",  // 19
    "((xx)(yx))z=x(x(y(xz)))",  // 20
    "(x((xy)x))z=((xx)y)(xz)",  // 21
    "(x((xy)x))z=(xx)((yx)z)",  // 22
    "(x((xy)x))z=(xx)(y(xz))",  // 23
    "(x((xy)x))z=x((x(yx))z)",  // 24
    "(x((xy)x))z=x(x((yx)z))",  // 25
    "(x((xy)x))z=x(x(y(xz)))",  // 26
    "(x(x(yx)))z=((xx)y)(xz)",  // 27
    "(x(x(yx)))z=(x(xy))(xz)",  // 28
    "(x(x(yx)))z=(xx)(y(xz))",  // 29
    "(x(x(yx)))z=x(((xy)x)z)",  // 30
    "(x(x(yx)))z=x((xy)(xz))",  // 31
    "(x(x(yx)))z=x(x(y(xz)))",  // 32
    "((xx)y)(xz)=(xx)((yx)z)",  // 33
    "((xx)y)(xz)=x(((xy)x)z)",  // 34
    "((xx)y)(xz)=x((x(yx))z)",  // 35
    "((xx)y)(xz)=x(x((yx)z))",  // 36
    "(x(xy))(xz)=(xx)((yx)z)",  // 37
    "(x(xy))(xz)=x((x(yx))z)",  // 38
    "(x(xy))(xz)=x(x((yx)z))",  // 39
    "(xx)((yx)z)=x(((xy)x)z)",  // 40
    "(xx)((yx)z)=x((xy)(xz))",  // 41
    "(xx)((yx)z)=x(x(y(xz)))",  // 42
    "(xx)(y(xz))=x(((xy)x)z)",  // 43
    "(xx)(y(xz))=x((x(yx))z)",  // 44
    "(xx)(y(xz))=x(x((yx)z))",  // 45
}};

// One defining identity per Bol-Moufang variety. RC1 is the dual of LC1
// (the printed source duplicates RNQ there); LG2's unbalanced parenthesis is
// repaired, confirmed by duality with RG2.
const std::array<std::pair<const char*, const char*>, 26> kBolMoufang = {{
    {"CQ", "x(y(yz))=((xy)y)z"},
    {"EQ", "x((yx)z)=(xy)(xz)"},
    {"FQ", "(x(yx))z=((xy)x)z"},
    {"GR", "(xy)z=x(yz)"},
    {"LAQ", "x(x(yz))=(xx)(yz)"},
    {"LBQ", "x(y(xz))=(x(yx))z"},
    {"LC1", "(xx)(yz)=(x(xy))z"},
    {"LC2", "x(x(yz))=(x(xy))z"},
    {"LC3", "x(x(yz))=((xx)y)z"},
    {"LC4", "x(y(yz))=(x(yy))z"},
    {"LG1", "x(y(zx))=(x(yz))x"},
    {"LG2", "(xy)(zz)=(x(yz))z"},
    {"LG3", "x(y(zy))=(x(yz))y"},
    {"LNQ", "(xx)(yz)=((xx)y)z"},
    {"MNQ", "x((yy)z)=(x(yy))z"},
    {"MQ", "x(y(xz))=((xy)x)z"},
    {"RAQ", "(x(yy))z=((xy)y)z"},
    {"RBQ", "x((yz)y)=((xy)z)y"},
    {"RC1", "x((yz)z)=(xy)(zz)"},
    {"RC2", "x((yz)z)=((xy)z)z"},
    {"RC3", "x(y(zz))=((xy)z)z"},
    {"RC4", "x((yy)z)=((xy)y)z"},
    {"RG1", "x((xy)z)=((xx)y)z"},
    {"RG2", "x((xy)z)=(xx)(yz)"},
    {"RG3", "x((yx)z)=((xy)x)z"},
    {"RNQ", "x(y(zz))=(xy)(zz)"},
}};

const std::array<std::pair<const char*, const char*>, 5> kMoufangBol = {{
    {"left-moufang", "((xy)x)z=x(y(xz))"},
    {"right-moufang", "z(x(yx))=((zx)y)x"},
    {"middle-moufang", "(xy)(zx)=(x(yz))x"},
    {"left-bol", "(x(yx))z=x(y(xz))"},
    {"right-bol", "z((xy)x)=((zx)y)x"},
}};

constexpr const char* kInvolutiveInversion = "x((yz)(xt))=((xy)(zx))t";

}  // namespace

Identity catalog_table1(int index) {
  if (index < 1 || index > 45) throw error("table1 index must be in 1..45");
  return parse_identity(kTable1[index - 1]);
}

Identity catalog(const std::string& family, const std::string& key) {
  if (family == "table1") {
    int idx = 0;
    try {
      idx = std::stoi(key);
    } catch (const std::exception&) {
      throw error("table1 keys are 1..45");
    }
    return catalog_table1(idx);
  }
  if (family == "bol-moufang") {
    for (const auto& [name, src] : kBolMoufang)
      if (key == name) return parse_identity(src);
    throw error("unknown bol-moufang variety: " + key);
  }
  if (family == "moufang-bol") {
    for (const auto& [name, src] : kMoufangBol)
      if (key == name) return parse_identity(src);
    throw error("unknown moufang-bol identity: " + key);
  }
  if (family == "involutive-inversion") {
    if (key == "identity" || key.empty())
      return parse_identity(kInvolutiveInversion);
    throw error("involutive-inversion has the single key 'identity'");
  }
  throw error("unknown catalog family: " + family);
}

std::vector<std::pair<std::string, Identity>> catalog_list(
    const std::string& family) {
  std::vector<std::pair<std::string, Identity>> out;
  if (family == "table1") {
    for (int i = 1; i <= 45; ++i)
      out.emplace_back(std::to_string(i), catalog_table1(i));
  } else if (family == "bol-moufang") {
    for (const auto& [name, src] : kBolMoufang)
      out.emplace_back(name, parse_identity(src));
  } else if (family == "moufang-bol") {
    for (const auto& [name, src] : kMoufangBol)
      out.emplace_back(name, parse_identity(src));
  } else if (family == "involutive-inversion") {
    out.emplace_back("identity", parse_identity(kInvolutiveInversion));
  } else {
    throw error("unknown catalog family: " + family);
  }
  return out;
}

}  // namespace divalg

#include "nassc/ir/qasm.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "nassc/error.hpp"

namespace nassc::ir {

namespace {

class AngleParser {
 public:
  explicit AngleParser(std::string_view s) : s_(s) {}

  double parse() {
    const double v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail();
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail() const {
    throw Error("bad angle expression '" + std::string(s_) + "'");
  }

  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  double term() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }
  double primary() {
    skip_ws();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail();
      return v;
    }
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return std::numbers::pi;
    }
    const std::string rest(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail();
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

struct Statement {
  std::string text;
  int line;
};

std::vector<Statement> split_statements(std::string_view text) {
  std::vector<Statement> out;
  std::string cur;
  int line = 1, start = 1;
  bool fresh = true;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      if (i < text.size()) ++line;
      continue;
    }
    if (c == '\n') ++line;
    if (fresh && !std::isspace(static_cast<unsigned char>(c))) {
      start = line;
      fresh = false;
    }
    if (c == ';') {
      out.push_back({trim(cur), start});
      cur.clear();
      fresh = true;
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) throw ParseError(start, "missing ';'");
  return out;
}

class Parser {
 public:
  Circuit run(std::string_view text) {
    for (const Statement& st : split_statements(text)) {
      line_ = st.line;
      statement(st.text);
    }
    if (!have_qreg_) throw ParseError(line_, "no qreg declared");
    c_.num_clbits = num_clbits_;
    try {
      validate(c_);
    } catch (const InvalidCircuit& e) {
      throw ParseError(line_, e.what());
    }
    return std::move(c_);
  }

 private:
  [[noreturn]] void fail(const std::string& why) const { throw ParseError(line_, why); }

  void statement(const std::string& s) {
    if (s.empty()) return;
    if (s.rfind("OPENQASM", 0) == 0) {
      if (trim(s.substr(8)) != "2.0") fail("only OPENQASM 2.0 is supported");
      return;
    }
    if (s.rfind("include", 0) == 0) return;
    if (s.rfind("qreg", 0) == 0) return qreg(s.substr(4));
    if (s.rfind("creg", 0) == 0) return creg(s.substr(4));
    if (s.rfind("gate ", 0) == 0 || s.rfind("opaque", 0) == 0 || s.rfind("if", 0) == 0 ||
        s.rfind("reset", 0) == 0) {
      fail("unsupported statement '" + s.substr(0, s.find_first_of(" (")) + "'");
    }
    if (s.rfind("measure", 0) == 0) return measure(s.substr(7));
    gate(s);
  }

  std::pair<std::string, int> decl(const std::string& body) {
    const std::string d = trim(body);
    const auto lb = d.find('['), rb = d.find(']');
    if (lb == std::string::npos || rb == std::string::npos || rb < lb) fail("bad register declaration");
    const std::string name = trim(d.substr(0, lb));
    const int size = std::atoi(d.substr(lb + 1, rb - lb - 1).c_str());
    if (name.empty() || size <= 0) fail("bad register declaration");
    return {name, size};
  }

  void qreg(const std::string& body) {
    if (have_qreg_) fail("only one quantum register is supported");
    auto [name, size] = decl(body);
    qreg_name_ = name;
    c_.num_qubits = size;
    have_qreg_ = true;
  }

  void creg(const std::string& body) {
    auto [name, size] = decl(body);
    cregs_[name] = {num_clbits_, size};
    num_clbits_ += size;
  }

  // Returns indices referenced by "q[3]" or the whole register for "q".
  std::vector<int> qubit_ref(const std::string& ref) {
    if (!have_qreg_) fail("gate before qreg");
    const auto lb = ref.find('[');
    const std::string name = trim(ref.substr(0, lb));
    if (name != qreg_name_) fail("unknown quantum register '" + name + "'");
    if (lb == std::string::npos) {
      std::vector<int> all(static_cast<std::size_t>(c_.num_qubits));
      for (int i = 0; i < c_.num_qubits; ++i) all[static_cast<std::size_t>(i)] = i;
      return all;
    }
    const int idx = index(ref, lb);
    if (idx >= c_.num_qubits) fail("qubit index out of range");
    return {idx};
  }

  std::vector<int> clbit_ref(const std::string& ref) {
    const auto lb = ref.find('[');
    const std::string name = trim(ref.substr(0, lb));
    auto it = cregs_.find(name);
    if (it == cregs_.end()) fail("unknown classical register '" + name + "'");
    auto [off, size] = it->second;
    if (lb == std::string::npos) {
      std::vector<int> all;
      for (int i = 0; i < size; ++i) all.push_back(off + i);
      return all;
    }
    const int idx = index(ref, lb);
    if (idx >= size) fail("classical bit index out of range");
    return {off + idx};
  }

  int index(const std::string& ref, std::size_t lb) {
    const auto rb = ref.find(']', lb);
    if (rb == std::string::npos) fail("missing ']'");
    const std::string num = trim(ref.substr(lb + 1, rb - lb - 1));
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos) fail("bad index");
    return std::atoi(num.c_str());
  }

  void measure(const std::string& body) {
    const auto arrow = body.find("->");
    if (arrow == std::string::npos) fail("measure without '->'");
    const auto qs = qubit_ref(trim(body.substr(0, arrow)));
    const auto cs = clbit_ref(trim(body.substr(arrow + 2)));
    if (qs.size() != cs.size()) fail("measure register size mismatch");
    for (std::size_t i = 0; i < qs.size(); ++i) c_.add(ir::measure(qs[i], cs[i]));
  }

  void gate(const std::string& s) {
    std::size_t p = 0;
    while (p < s.size() && (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '_')) ++p;
    const std::string name = s.substr(0, p);
    if (name.empty()) fail("cannot parse statement '" + s + "'");
    std::vector<double> params;
    std::string rest = s.substr(p);
    std::string rt = trim(rest);
    if (!rt.empty() && rt[0] == '(') {
      int depth = 0;
      std::size_t close = std::string::npos;
      for (std::size_t i = 0; i < rt.size(); ++i) {
        if (rt[i] == '(') ++depth;
        if (rt[i] == ')' && --depth == 0) {
          close = i;
          break;
        }
      }
      if (close == std::string::npos) fail("unbalanced parentheses");
      for (const std::string& e : split_commas(rt.substr(1, close - 1))) {
        try {
          params.push_back(eval_angle(e));
        } catch (const Error& err) {
          fail(err.what());
        }
      }
      rt = rt.substr(close + 1);
    }
    std::vector<std::vector<int>> args;
    for (const std::string& a : split_commas(rt)) args.push_back(qubit_ref(a));
    if (args.empty()) fail("gate '" + name + "' without arguments");

    if (name == "barrier") {
      std::vector<int> qs;
      for (const auto& a : args) qs.insert(qs.end(), a.begin(), a.end());
      c_.add(ir::barrier(std::move(qs)));
      return;
    }

    // Broadcast over whole-register arguments.
    std::size_t width = 1;
    for (const auto& a : args) {
      if (a.size() > 1) {
        if (width > 1 && a.size() != width) fail("register size mismatch");
        width = a.size();
      }
    }
    for (std::size_t i = 0; i < width; ++i) {
      std::vector<int> qs;
      for (const auto& a : args) qs.push_back(a.size() == 1 ? a[0] : a[i]);
      emit(name, params, qs);
    }
  }

  void expect(const std::string& name, const std::vector<double>& params,
              const std::vector<int>& qs, std::size_t np, std::size_t nq) {
    if (params.size() != np) fail(name + ": expected " + std::to_string(np) + " parameters");
    if (qs.size() != nq) fail(name + ": expected " + std::to_string(nq) + " qubits");
    if (nq == 2 && qs[0] == qs[1]) fail(name + ": repeated qubit");
    if (nq == 3 && (qs[0] == qs[1] || qs[1] == qs[2] || qs[0] == qs[2])) fail(name + ": repeated qubit");
  }

  void emit(const std::string& name, const std::vector<double>& params, const std::vector<int>& qs) {
    static const std::map<std::string, GateKind> direct = {
        {"id", GateKind::ID},   {"x", GateKind::X},     {"sx", GateKind::SX},  {"rz", GateKind::RZ},
        {"h", GateKind::H},     {"y", GateKind::Y},     {"z", GateKind::Z},    {"u3", GateKind::U3},
        {"U", GateKind::U3},    {"cx", GateKind::CX},   {"CX", GateKind::CX},  {"cy", GateKind::CY},
        {"cz", GateKind::CZ},   {"crx", GateKind::CRX}, {"swap", GateKind::SWAP}};
    constexpr double pi = std::numbers::pi;
    if (auto it = direct.find(name); it != direct.end()) {
      const GateKind k = it->second;
      const std::size_t nq = (k == GateKind::CX || k == GateKind::CY || k == GateKind::CZ ||
                              k == GateKind::CRX || k == GateKind::SWAP)
                                 ? 2
                                 : 1;
      expect(name, params, qs, static_cast<std::size_t>(param_count(k)), nq);
      Gate g;
      g.kind = k;
      g.qubits = qs;
      g.params = params;
      c_.add(std::move(g));
    } else if (name == "u1") {
      expect(name, params, qs, 1, 1);
      c_.add(u3(0, 0, params[0], qs[0]));
    } else if (name == "u2") {
      expect(name, params, qs, 2, 1);
      c_.add(u3(pi / 2, params[0], params[1], qs[0]));
    } else if (name == "u") {
      expect(name, params, qs, 3, 1);
      c_.add(u3(params[0], params[1], params[2], qs[0]));
    } else if (name == "s" || name == "sdg" || name == "t" || name == "tdg") {
      expect(name, params, qs, 0, 1);
      const double lam = (name[0] == 's' ? pi / 2 : pi / 4) * (name.size() > 1 ? -1 : 1);
      c_.add(u3(0, 0, lam, qs[0]));
    } else if (name == "rx") {
      expect(name, params, qs, 1, 1);
      c_.add(u3(params[0], -pi / 2, pi / 2, qs[0]));
    } else if (name == "ry") {
      expect(name, params, qs, 1, 1);
      c_.add(u3(params[0], 0, 0, qs[0]));
    } else if (name == "cu1" || name == "cp") {
      expect(name, params, qs, 1, 2);
      const double lam = params[0];
      c_.add(u3(0, 0, lam / 2, qs[0])).add(cx(qs[0], qs[1])).add(u3(0, 0, -lam / 2, qs[1]));
      c_.add(cx(qs[0], qs[1])).add(u3(0, 0, lam / 2, qs[1]));
    } else if (name == "ccx") {
      expect(name, params, qs, 0, 3);
      const int a = qs[0], b = qs[1], t = qs[2];
      c_.add(h(t)).add(cx(b, t)).add(rz(-pi / 4, t)).add(cx(a, t)).add(rz(pi / 4, t));
      c_.add(cx(b, t)).add(rz(-pi / 4, t)).add(cx(a, t)).add(rz(pi / 4, b)).add(rz(pi / 4, t));
      c_.add(h(t)).add(cx(a, b)).add(rz(pi / 4, a)).add(rz(-pi / 4, b)).add(cx(a, b));
    } else {
      throw UnsupportedGate(name, line_);
    }
  }

  Circuit c_;
  int line_ = 1;
  bool have_qreg_ = false;
  std::string qreg_name_;
  int num_clbits_ = 0;
  std::map<std::string, std::pair<int, int>> cregs_;
};

}  // namespace

double eval_angle(std::string_view expr) { return AngleParser(expr).parse(); }

Circuit parse_qasm(std::string_view text) { return Parser().run(text); }

Circuit load_qasm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_qasm(ss.str());
}

std::string to_qasm(const Circuit& c) {
  std::ostringstream os;
  os.precision(17);
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  os << "qreg q[" << c.num_qubits << "];\n";
  if (c.num_clbits > 0) os << "creg c[" << c.num_clbits << "];\n";
  for (const Gate& g : c.gates) os << to_string(g) << ";\n";
  return os.str();
}

void save_qasm(const Circuit& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << to_qasm(c);
}

}  // namespace nassc::ir

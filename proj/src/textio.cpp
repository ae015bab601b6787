#include "tfdg/textio.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

namespace tfdg {

ParseError::ParseError(size_t line, size_t col, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", col " +
                         std::to_string(col) + ": " + message),
      line_(line),
      col_(col) {}

const RankedDigraph* SpecFile::find_digraph(const std::string& name) const {
  for (const auto& [n, d] : digraphs) {
    if (n == name) return &d;
  }
  return nullptr;
}

const EPSequence* SpecFile::find_sequence(const std::string& name) const {
  for (const auto& [n, s] : sequences) {
    if (n == name) return &s;
  }
  return nullptr;
}

const EPSet* SpecFile::find_epset(const std::string& name) const {
  for (const auto& [n, s] : epsets) {
    if (n == name) return &s;
  }
  return nullptr;
}

namespace {

enum class Tok { ident, number, punct, eof };

struct Token {
  Tok kind = Tok::eof;
  std::string text;
  size_t line = 1;
  size_t col = 1;
};

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  size_t line = 1;
  size_t col = 1;
  size_t i = 0;
  auto step = [&]() {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') step();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      step();
      continue;
    }
    const size_t tok_line = line;
    const size_t tok_col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string word;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) ||
              text[i] == '_')) {
        word += text[i];
        step();
      }
      out.push_back(Token{Tok::ident, std::move(word), tok_line, tok_col});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        digits += text[i];
        step();
      }
      out.push_back(Token{Tok::number, std::move(digits), tok_line, tok_col});
      continue;
    }
    if (std::string("{}[];:,.").find(c) != std::string::npos) {
      out.push_back(Token{Tok::punct, std::string(1, c), tok_line, tok_col});
      step();
      continue;
    }
    throw ParseError(line, col, std::string("unexpected character '") + c + "'");
  }
  out.push_back(Token{Tok::eof, "", line, col});
  return out;
}

class Parser {
public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  SpecFile parse_file() {
    SpecFile file;
    const Token* family_token = nullptr;
    while (peek().kind != Tok::eof) {
      const Token& head = peek();
      const std::string keyword = expect_ident("a declaration");
      if (keyword == "digraph") {
        parse_digraph(file, head);
      } else if (keyword == "family") {
        if (family_token != nullptr) {
          fail(head, "duplicate family block");
        }
        family_token = &head;
        parse_family(file);
      } else if (keyword == "seq") {
        parse_seq(file);
      } else if (keyword == "epset") {
        parse_epset_decl(file);
      } else {
        fail(head, "expected digraph, family, seq, or epset, got '" + keyword +
                       "'");
      }
    }
    if (family_token != nullptr) {
      build_family(file, *family_token);
    }
    return file;
  }

  EPSet parse_single_epset() {
    EPSet s = parse_epset_literal();
    if (peek().kind != Tok::eof) {
      fail(peek(), "trailing input after EPSet literal");
    }
    return s;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }

  const Token& get() { return tokens_[pos_++]; }

  [[noreturn]] void fail(const Token& at, const std::string& message) const {
    throw ParseError(at.line, at.col, message);
  }

  bool accept_punct(char c) {
    if (peek().kind == Tok::punct && peek().text[0] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect_punct(char c) {
    if (!accept_punct(c)) {
      fail(peek(), std::string("expected '") + c + "'");
    }
  }

  std::string expect_ident(const std::string& what) {
    if (peek().kind != Tok::ident) {
      fail(peek(), "expected " + what);
    }
    return get().text;
  }

  void expect_keyword(const std::string& word) {
    const Token& t = peek();
    if (t.kind != Tok::ident || t.text != word) {
      fail(t, "expected '" + word + "'");
    }
    ++pos_;
  }

  uint64_t expect_number(const std::string& what) {
    if (peek().kind != Tok::number) {
      fail(peek(), "expected " + what);
    }
    const Token t = get();
    try {
      return std::stoull(t.text);
    } catch (const std::exception&) {
      fail(t, "number out of range");
    }
  }

  Rank expect_rank() {
    const Token& t = peek();
    if (t.kind == Tok::number) {
      return Rank::finite(expect_number("a rank"));
    }
    if (t.kind == Tok::ident && (t.text == "warrow" || t.text == "omega")) {
      ++pos_;
      return t.text == "warrow" ? Rank::warrow() : Rank::omega();
    }
    fail(t, "expected a rank (number, warrow, or omega)");
  }

  Side expect_side() {
    const Token& t = peek();
    if (t.kind == Tok::ident && (t.text == "src" || t.text == "snk")) {
      ++pos_;
      return t.text == "src" ? Side::source : Side::sink;
    }
    fail(t, "expected 'src' or 'snk'");
  }

  ArcEnd parse_arc_end() {
    std::string arc = expect_ident("an arc id");
    expect_punct('.');
    return ArcEnd{std::move(arc), expect_side()};
  }

  Ditip parse_ditip_entry() {
    std::string id = expect_ident("a ditip id");
    expect_punct(':');
    const Token& t = peek();
    if (t.kind == Tok::ident && (t.text == "in" || t.text == "out")) {
      ++pos_;
      return Ditip{std::move(id), t.text == "in" ? Polarity::in : Polarity::out};
    }
    fail(t, "expected 'in' or 'out'");
  }

  // One or more bracketed blocks: [x y] [z] ... terminated by ';'.
  template <typename Entry, typename ParseEntry>
  std::vector<std::vector<Entry>> parse_blocks(ParseEntry parse_entry) {
    std::vector<std::vector<Entry>> blocks;
    while (!accept_punct(';')) {
      expect_punct('[');
      std::vector<Entry> block;
      while (!accept_punct(']')) {
        block.push_back(parse_entry());
      }
      blocks.push_back(std::move(block));
    }
    return blocks;
  }

  void parse_digraph(SpecFile& file, const Token& at) {
    const Token& name_token = peek();
    const std::string name = expect_ident("a digraph name");
    if (file.find_digraph(name) != nullptr) {
      fail(name_token, "duplicate digraph '" + name + "'");
    }
    expect_keyword("rank");
    DigraphData data;
    data.rank = expect_rank();
    expect_punct('{');

    std::map<uint64_t, std::vector<Ditip>> tips_by_level;
    std::map<uint64_t, std::vector<std::vector<std::string>>> verts_by_index;

    while (!accept_punct('}')) {
      const Token& stmt = peek();
      const std::string keyword = expect_ident("a digraph statement");
      if (keyword == "arcs") {
        while (!accept_punct(';')) {
          data.arcs.push_back(expect_ident("an arc id"));
        }
      } else if (keyword == "v0") {
        data.v0 = parse_blocks<ArcEnd>([&] { return parse_arc_end(); });
      } else if (keyword == "vomega") {
        data.v_omega =
            parse_blocks<std::string>([&] { return expect_ident("a ditip id"); });
      } else if (keyword == "ditipswarrow") {
        while (!accept_punct(';')) {
          data.warrow_tips.push_back(parse_ditip_entry());
        }
      } else if (keyword.rfind("ditips", 0) == 0 && keyword.size() > 6) {
        const uint64_t level = parse_suffix_number(stmt, keyword, 6);
        auto& tips = tips_by_level[level];
        while (!accept_punct(';')) {
          tips.push_back(parse_ditip_entry());
        }
      } else if (keyword.size() > 1 && keyword[0] == 'v') {
        const uint64_t index = parse_suffix_number(stmt, keyword, 1);
        if (index == 0) {
          fail(stmt, "v0 blocks contain arc ends, not ditip ids");
        }
        verts_by_index[index] =
            parse_blocks<std::string>([&] { return expect_ident("a ditip id"); });
      } else {
        fail(stmt, "unknown digraph statement '" + keyword + "'");
      }
    }

    size_t level_count = 0;
    for (const auto& [k, tips] : tips_by_level) {
      level_count = std::max(level_count, static_cast<size_t>(k) + 1);
    }
    for (const auto& [k, verts] : verts_by_index) {
      level_count = std::max(level_count, static_cast<size_t>(k));
    }
    data.levels.resize(level_count);
    for (auto& [k, tips] : tips_by_level) {
      data.levels[k].tips = std::move(tips);
    }
    for (auto& [k, verts] : verts_by_index) {
      data.levels[k - 1].vertices = std::move(verts);
    }

    try {
      file.digraphs.emplace_back(name, RankedDigraph(std::move(data)));
    } catch (const ValidationError& e) {
      fail(at, "digraph '" + name + "' failed validation: " +
                   e.report().joined());
    }
  }

  uint64_t parse_suffix_number(const Token& at, const std::string& word,
                               size_t start) {
    uint64_t value = 0;
    for (size_t i = start; i < word.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(word[i]))) {
        fail(at, "unknown digraph statement '" + word + "'");
      }
      value = value * 10 + static_cast<uint64_t>(word[i] - '0');
    }
    return value;
  }

  std::vector<std::string> parse_name_list() {
    expect_punct('[');
    std::vector<std::string> names;
    while (!accept_punct(']')) {
      names.push_back(expect_ident("a digraph name"));
    }
    expect_punct(';');
    return names;
  }

  void parse_family(SpecFile& file) {
    expect_punct('{');
    if (peek().kind == Tok::ident && peek().text == "prefix") {
      ++pos_;
      file.family_prefix_names = parse_name_list();
    }
    expect_keyword("cycle");
    file.family_cycle_names = parse_name_list();
    expect_punct('}');
  }

  void build_family(SpecFile& file, const Token& at) {
    auto resolve = [&](const std::vector<std::string>& names) {
      std::vector<RankedDigraph> out;
      for (const auto& name : names) {
        const RankedDigraph* d = file.find_digraph(name);
        if (d == nullptr) {
          fail(at, "family references unknown digraph '" + name + "'");
        }
        out.push_back(*d);
      }
      return out;
    };
    try {
      file.family.emplace(resolve(file.family_prefix_names),
                          resolve(file.family_cycle_names));
    } catch (const std::invalid_argument& e) {
      fail(at, std::string("invalid family: ") + e.what());
    }
  }

  std::optional<ElemRef> parse_seq_entry(const SeqKind& kind) {
    const Token& t = peek();
    const std::string id = expect_ident("an element id or '_'");
    if (id == "_") return std::nullopt;
    if (kind.kind == ElemKind::arc_end) {
      expect_punct('.');
      return ElemRef::end(id, expect_side());
    }
    if (peek().kind == Tok::punct && peek().text[0] == '.') {
      fail(peek(), "'.' is only used in arc-end entries");
    }
    (void)t;
    return ElemRef{id};
  }

  void parse_seq(SpecFile& file) {
    const Token& name_token = peek();
    const std::string name = expect_ident("a sequence name");
    if (file.find_sequence(name) != nullptr) {
      fail(name_token, "duplicate sequence '" + name + "'");
    }
    EPSequence seq;
    const std::string selector = expect_ident("'rank' or 'kind'");
    if (selector == "rank") {
      const Token& rank_token = peek();
      const Rank r = expect_rank();
      if (r == Rank::omega()) {
        fail(rank_token, "ditip sequences exist at finite ranks and warrow, not at omega");
      }
      seq.kind = SeqKind::ditip(r);
    } else if (selector == "kind") {
      const Token& kind_token = peek();
      const std::string kind = expect_ident("'arc' or 'end'");
      if (kind == "arc") {
        seq.kind = SeqKind::arc();
      } else if (kind == "end") {
        seq.kind = SeqKind::arc_end();
      } else {
        fail(kind_token, "expected 'arc' or 'end', got '" + kind + "'");
      }
    } else {
      fail(name_token, "expected 'rank' or 'kind' after the sequence name");
    }

    expect_punct('{');
    if (peek().kind == Tok::ident && peek().text == "prefix") {
      ++pos_;
      expect_punct('[');
      while (!accept_punct(']')) {
        seq.prefix.push_back(parse_seq_entry(seq.kind));
      }
      expect_punct(';');
    }
    const Token& cycle_token = peek();
    expect_keyword("cycle");
    expect_punct('[');
    while (!accept_punct(']')) {
      seq.cycle.push_back(parse_seq_entry(seq.kind));
    }
    expect_punct(';');
    expect_punct('}');
    if (seq.cycle.empty()) {
      fail(cycle_token, "sequence cycle must be nonempty");
    }
    file.sequences.emplace_back(name, std::move(seq));
  }

  std::vector<uint64_t> parse_number_list() {
    expect_punct('[');
    std::vector<uint64_t> out;
    bool first = true;
    while (!accept_punct(']')) {
      if (!first) expect_punct(',');
      first = false;
      out.push_back(expect_number("a number"));
    }
    return out;
  }

  EPSet parse_epset_literal() {
    const Token& at = peek();
    expect_punct('{');
    expect_keyword("prefix");
    expect_punct(':');
    const std::vector<uint64_t> exceptions = parse_number_list();
    expect_punct(',');
    expect_keyword("from");
    expect_punct(':');
    const uint64_t threshold = expect_number("the threshold");
    expect_punct(',');
    expect_keyword("mod");
    expect_punct(':');
    const uint64_t period = expect_number("the period");
    expect_punct(',');
    expect_keyword("residues");
    expect_punct(':');
    const std::vector<uint64_t> residues = parse_number_list();
    expect_punct('}');
    try {
      return EPSet(threshold, period, residues, exceptions);
    } catch (const std::invalid_argument& e) {
      fail(at, std::string("invalid EPSet: ") + e.what());
    }
  }

  void parse_epset_decl(SpecFile& file) {
    const Token& name_token = peek();
    const std::string name = expect_ident("an EPSet name");
    if (file.find_epset(name) != nullptr) {
      fail(name_token, "duplicate epset '" + name + "'");
    }
    EPSet s = parse_epset_literal();
    expect_punct(';');
    file.epsets.emplace_back(name, std::move(s));
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace

SpecFile parse_spec(const std::string& text) {
  return Parser(lex(text)).parse_file();
}

EPSet parse_epset(const std::string& text) {
  return Parser(lex(text)).parse_single_epset();
}

namespace {

template <typename T>
std::string join(const std::vector<T>& items,
                 const std::function<std::string(const T&)>& show) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += " ";
    out += show(items[i]);
  }
  return out;
}

std::string join_numbers(const std::vector<uint64_t>& items) {
  std::string out;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(items[i]);
  }
  return out;
}

std::string seq_entry_text(const SeqKind& kind,
                           const std::optional<ElemRef>& e) {
  return e.has_value() ? format_element(kind, *e) : std::string("_");
}

}  // namespace

std::string print_epset(const EPSet& s) {
  return "{prefix: [" + join_numbers(s.exceptions()) +
         "], from: " + std::to_string(s.threshold()) +
         ", mod: " + std::to_string(s.period()) + ", residues: [" +
         join_numbers(s.residues()) + "]}";
}

std::string print_spec(const SpecFile& file) {
  std::ostringstream out;
  for (const auto& [name, rd] : file.digraphs) {
    const DigraphData& d = rd.data();
    out << "digraph " << name << " rank " << to_string(d.rank) << " {\n";
    out << "  arcs";
    for (const auto& arc : d.arcs) out << " " << arc;
    out << ";\n";
    out << "  v0";
    for (const auto& block : d.v0) {
      out << " [" << join<ArcEnd>(block, [](const ArcEnd& e) {
        return to_string(e);
      }) << "]";
    }
    out << ";\n";
    for (size_t k = 0; k < d.levels.size(); ++k) {
      out << "  ditips" << k;
      for (const auto& tip : d.levels[k].tips) {
        out << " " << tip.id << ":" << to_string(tip.polarity);
      }
      out << ";\n";
      out << "  v" << (k + 1);
      for (const auto& block : d.levels[k].vertices) {
        out << " [" << join<std::string>(block, [](const std::string& s) {
          return s;
        }) << "]";
      }
      out << ";\n";
    }
    if (d.rank == Rank::omega()) {
      out << "  ditipswarrow";
      for (const auto& tip : d.warrow_tips) {
        out << " " << tip.id << ":" << to_string(tip.polarity);
      }
      out << ";\n";
      out << "  vomega";
      for (const auto& block : d.v_omega) {
        out << " [" << join<std::string>(block, [](const std::string& s) {
          return s;
        }) << "]";
      }
      out << ";\n";
    }
    out << "}\n\n";
  }

  if (!file.family_cycle_names.empty()) {
    out << "family { ";
    if (!file.family_prefix_names.empty()) {
      out << "prefix ["
          << join<std::string>(file.family_prefix_names,
                               [](const std::string& s) { return s; })
          << "]; ";
    }
    out << "cycle ["
        << join<std::string>(file.family_cycle_names,
                             [](const std::string& s) { return s; })
        << "]; }\n\n";
  }

  for (const auto& [name, seq] : file.sequences) {
    out << "seq " << name;
    switch (seq.kind.kind) {
      case ElemKind::arc:
        out << " kind arc";
        break;
      case ElemKind::arc_end:
        out << " kind end";
        break;
      case ElemKind::ditip:
        out << " rank " << to_string(seq.kind.tip_rank);
        break;
    }
    out << " { ";
    if (!seq.prefix.empty()) {
      out << "prefix ["
          << join<std::optional<ElemRef>>(
                 seq.prefix,
                 [&](const std::optional<ElemRef>& e) {
                   return seq_entry_text(seq.kind, e);
                 })
          << "]; ";
    }
    out << "cycle ["
        << join<std::optional<ElemRef>>(
               seq.cycle,
               [&](const std::optional<ElemRef>& e) {
                 return seq_entry_text(seq.kind, e);
               })
        << "]; }\n";
  }
  if (!file.sequences.empty()) out << "\n";

  for (const auto& [name, s] : file.epsets) {
    out << "epset " << name << " " << print_epset(s) << ";\n";
  }
  return out.str();
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += "\"";
  return out;
}

// Which block of `blocks` contains index `idx` (blocks partition indices).
size_t block_of_index(const std::vector<std::vector<size_t>>& blocks,
                      size_t idx) {
  for (size_t b = 0; b < blocks.size(); ++b) {
    for (size_t member : blocks[b]) {
      if (member == idx) return b;
    }
  }
  return blocks.size();
}

void dot_tip_edge(std::ostringstream& out, const std::string& tip_node,
                  const std::string& vertex_node, Polarity polarity,
                  const std::string& label, bool directed) {
  const char* connector = directed ? " -> " : " -- ";
  if (directed && polarity == Polarity::out) {
    out << "  " << dot_quote(vertex_node) << connector << dot_quote(tip_node);
  } else {
    out << "  " << dot_quote(tip_node) << connector << dot_quote(vertex_node);
  }
  out << " [style=dashed, label=" << dot_quote(label) << "];\n";
}

}  // namespace

std::string to_dot(const RankedDigraph& d, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << dot_quote(name) << " {\n";
  out << "  rankdir=LR;\n";
  for (size_t b = 0; b < d.data().v0.size(); ++b) {
    out << "  " << dot_quote("v0_" + std::to_string(b))
        << " [shape=ellipse, label=" << dot_quote("v0#" + std::to_string(b))
        << "];\n";
  }
  for (const auto& arc : d.data().arcs) {
    const size_t src = d.v0_block_of(ArcEnd{arc, Side::source});
    const size_t snk = d.v0_block_of(ArcEnd{arc, Side::sink});
    out << "  " << dot_quote("v0_" + std::to_string(src)) << " -> "
        << dot_quote("v0_" + std::to_string(snk))
        << " [label=" << dot_quote(arc) << "];\n";
  }
  for (size_t k = 0; k < d.data().levels.size(); ++k) {
    const Level& level = d.data().levels[k];
    const std::string vprefix = "v" + std::to_string(k + 1) + "_";
    for (size_t b = 0; b < level.vertices.size(); ++b) {
      out << "  " << dot_quote(vprefix + std::to_string(b))
          << " [shape=box, label="
          << dot_quote("v" + std::to_string(k + 1) + "#" + std::to_string(b))
          << "];\n";
    }
    for (const auto& tip : level.tips) {
      const std::string tip_node = "t" + std::to_string(k) + "_" + tip.id;
      out << "  " << dot_quote(tip_node) << " [shape=point];\n";
      const size_t block = d.vertex_block_of(Rank::finite(k), tip.id);
      dot_tip_edge(out, tip_node, vprefix + std::to_string(block), tip.polarity,
                   tip.id + ":" + to_string(tip.polarity), true);
    }
  }
  if (d.rank() == Rank::omega()) {
    for (size_t b = 0; b < d.data().v_omega.size(); ++b) {
      out << "  " << dot_quote("vomega_" + std::to_string(b))
          << " [shape=box, label=" << dot_quote("vw#" + std::to_string(b))
          << "];\n";
    }
    for (const auto& tip : d.data().warrow_tips) {
      const std::string tip_node = "tw_" + tip.id;
      out << "  " << dot_quote(tip_node) << " [shape=point];\n";
      const size_t block = d.vertex_block_of(Rank::warrow(), tip.id);
      dot_tip_edge(out, tip_node, "vomega_" + std::to_string(block),
                   tip.polarity, tip.id + ":" + to_string(tip.polarity), true);
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const NsDigraph& nsd, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << dot_quote(name) << " {\n";
  out << "  rankdir=LR;\n";
  out << "  label=" << dot_quote("oracle " + nsd.oracle + ", resolution " +
                                 std::to_string(nsd.resolution))
      << ";\n";
  for (size_t b = 0; b < nsd.v0.size(); ++b) {
    out << "  " << dot_quote("v0_" + std::to_string(b))
        << " [shape=ellipse, label=" << dot_quote("*v0#" + std::to_string(b))
        << "];\n";
  }
  for (size_t a = 0; a < nsd.arcs.size(); ++a) {
    const size_t src = block_of_index(nsd.v0, 2 * a);
    const size_t snk = block_of_index(nsd.v0, 2 * a + 1);
    out << "  " << dot_quote("v0_" + std::to_string(src)) << " -> "
        << dot_quote("v0_" + std::to_string(snk)) << " [label="
        << dot_quote(class_label(nsd.arcs[a], nsd.resolution)) << "];\n";
  }
  for (size_t k = 0; k < nsd.levels.size(); ++k) {
    const NsLevel& level = nsd.levels[k];
    const std::string vprefix = "v" + std::to_string(k + 1) + "_";
    for (size_t b = 0; b < level.vertices.size(); ++b) {
      out << "  " << dot_quote(vprefix + std::to_string(b))
          << " [shape=box, label="
          << dot_quote("*v" + std::to_string(k + 1) + "#" + std::to_string(b))
          << "];\n";
    }
    for (size_t i = 0; i < level.tips.size(); ++i) {
      const std::string tip_node =
          "t" + std::to_string(k) + "_" + std::to_string(i);
      out << "  " << dot_quote(tip_node) << " [shape=point];\n";
      dot_tip_edge(out, tip_node,
                   vprefix + std::to_string(block_of_index(level.vertices, i)),
                   level.polarities[i],
                   class_label(level.tips[i], nsd.resolution) + ":" +
                       to_string(level.polarities[i]),
                   true);
    }
  }
  if (nsd.rank == Rank::omega()) {
    for (size_t b = 0; b < nsd.omega.vertices.size(); ++b) {
      out << "  " << dot_quote("vomega_" + std::to_string(b))
          << " [shape=box, label=" << dot_quote("*vw#" + std::to_string(b))
          << "];\n";
    }
    for (size_t i = 0; i < nsd.omega.tips.size(); ++i) {
      const std::string tip_node = "tw_" + std::to_string(i);
      out << "  " << dot_quote(tip_node) << " [shape=point];\n";
      dot_tip_edge(out, tip_node,
                   "vomega_" +
                       std::to_string(block_of_index(nsd.omega.vertices, i)),
                   nsd.omega.polarities[i],
                   class_label(nsd.omega.tips[i], nsd.resolution) + ":" +
                       to_string(nsd.omega.polarities[i]),
                   true);
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const NsGraph& g, const std::string& name) {
  std::ostringstream out;
  out << "graph " << dot_quote(name) << " {\n";
  out << "  label=" << dot_quote("oracle " + g.oracle + ", resolution " +
                                 std::to_string(g.resolution))
      << ";\n";
  for (size_t b = 0; b < g.x0.size(); ++b) {
    out << "  " << dot_quote("x0_" + std::to_string(b))
        << " [shape=ellipse, label=" << dot_quote("*x0#" + std::to_string(b))
        << "];\n";
  }
  for (size_t a = 0; a < g.branches.size(); ++a) {
    const size_t first = block_of_index(g.x0, 2 * a);
    const size_t second = block_of_index(g.x0, 2 * a + 1);
    out << "  " << dot_quote("x0_" + std::to_string(first)) << " -- "
        << dot_quote("x0_" + std::to_string(second)) << " [label="
        << dot_quote(class_label(g.branches[a], g.resolution)) << "];\n";
  }
  for (size_t k = 0; k < g.levels.size(); ++k) {
    const NsGraphLevel& level = g.levels[k];
    const std::string vprefix = "x" + std::to_string(k + 1) + "_";
    for (size_t b = 0; b < level.vertices.size(); ++b) {
      out << "  " << dot_quote(vprefix + std::to_string(b))
          << " [shape=box, label="
          << dot_quote("*x" + std::to_string(k + 1) + "#" + std::to_string(b))
          << "];\n";
    }
    for (size_t i = 0; i < level.tips.size(); ++i) {
      const std::string tip_node =
          "u" + std::to_string(k) + "_" + std::to_string(i);
      out << "  " << dot_quote(tip_node) << " [shape=point];\n";
      dot_tip_edge(out, tip_node,
                   vprefix + std::to_string(block_of_index(level.vertices, i)),
                   Polarity::in,
                   class_label(level.tips[i], g.resolution), false);
    }
  }
  if (g.rank == Rank::omega()) {
    for (size_t b = 0; b < g.omega.vertices.size(); ++b) {
      out << "  " << dot_quote("xomega_" + std::to_string(b))
          << " [shape=box, label=" << dot_quote("*xw#" + std::to_string(b))
          << "];\n";
    }
    for (size_t i = 0; i < g.omega.tips.size(); ++i) {
      const std::string tip_node = "uw_" + std::to_string(i);
      out << "  " << dot_quote(tip_node) << " [shape=point];\n";
      dot_tip_edge(out, tip_node,
                   "xomega_" + std::to_string(block_of_index(g.omega.vertices, i)),
                   Polarity::in, class_label(g.omega.tips[i], g.resolution),
                   false);
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace tfdg

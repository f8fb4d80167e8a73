#include "fortsim/field.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace fortsim {

Field::Field(std::initializer_list<Cell> cells) : cells_(cells.begin(), cells.end()) {}

Field::Field(const std::vector<Cell>& cells) : cells_(cells.begin(), cells.end()) {}

std::vector<Cell> Field::sorted_cells() const {
  std::vector<Cell> out(cells_.begin(), cells_.end());
  std::sort(out.begin(), out.end(), ReadingOrder{});
  return out;
}

int Field::full_neighbour_count(Cell c) const {
  int n = 0;
  for (Cell nb : neighbours(c)) n += contains(nb) ? 1 : 0;
  return n;
}

bool Component::contains(Cell c) const {
  return std::binary_search(cells.begin(), cells.end(), c, ReadingOrder{});
}

std::optional<Box> bounding_box(const Field& f) {
  if (f.empty()) return std::nullopt;
  Box b{std::numeric_limits<std::int64_t>::max(), std::numeric_limits<std::int64_t>::min(),
        std::numeric_limits<std::int64_t>::max(), std::numeric_limits<std::int64_t>::min()};
  for (Cell c : f.sorted_cells()) {
    b.min_x = std::min(b.min_x, c.x);
    b.max_x = std::max(b.max_x, c.x);
    b.min_y = std::min(b.min_y, c.y);
    b.max_y = std::max(b.max_y, c.y);
  }
  return b;
}

std::int64_t span(const std::vector<Cell>& cells) {
  if (cells.empty()) throw FieldError("undefined span");
  // |dx|+|dy| = max(|d(x+y)|, |d(x-y)|)
  auto lo_s = std::numeric_limits<std::int64_t>::max(), hi_s = std::numeric_limits<std::int64_t>::min();
  auto lo_d = lo_s, hi_d = hi_s;
  for (Cell c : cells) {
    lo_s = std::min(lo_s, c.x + c.y);
    hi_s = std::max(hi_s, c.x + c.y);
    lo_d = std::min(lo_d, c.x - c.y);
    hi_d = std::max(hi_d, c.x - c.y);
  }
  return std::max(hi_s - lo_s, hi_d - lo_d);
}

std::int64_t span(const Field& f) { return span(f.sorted_cells()); }

std::vector<Component> components(const Field& f) {
  std::vector<Component> out;
  std::unordered_set<Cell, CellHash> seen;
  for (Cell start : f.sorted_cells()) {
    if (seen.contains(start)) continue;
    Component comp;
    std::deque<Cell> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      Cell c = queue.front();
      queue.pop_front();
      comp.cells.push_back(c);
      for (Cell nb : neighbours(c)) {
        if (f.contains(nb) && seen.insert(nb).second) queue.push_back(nb);
      }
    }
    std::sort(comp.cells.begin(), comp.cells.end(), ReadingOrder{});
    out.push_back(std::move(comp));
  }
  // starts were taken in reading order, so components are already ordered by representative
  return out;
}

bool is_connected(const Field& f) { return components(f).size() <= 1; }

bool is_connected(const std::vector<Cell>& cells) { return is_connected(Field(cells)); }

std::int64_t min_distance(const Component& a, const Component& b) {
  if (a.cells.empty() || b.cells.empty()) throw FieldError("empty component");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (Cell p : a.cells) {
    for (Cell q : b.cells) {
      const auto d = manhattan(p, q);
      if (d == 0) throw FieldError("components overlap");
      best = std::min(best, d);
    }
  }
  return best;
}

std::int64_t rough_disc_min_size(int r) { return 2LL * r * r + 2LL * r + 1; }
std::int64_t rough_disc_max_size(int r) { return 2LL * r * r + 4LL * r + 2; }

namespace {

// Cells at exactly distance d from the origin, clockwise from due north.
std::vector<Cell> ring_clockwise(std::int64_t d) {
  std::vector<Cell> ring;
  ring.reserve(static_cast<std::size_t>(4 * d));
  for (std::int64_t i = 0; i < d; ++i) ring.push_back({i, d - i});    // N -> E
  for (std::int64_t i = 0; i < d; ++i) ring.push_back({d - i, -i});   // E -> S
  for (std::int64_t i = 0; i < d; ++i) ring.push_back({-i, -d + i});  // S -> W
  for (std::int64_t i = 0; i < d; ++i) ring.push_back({-d + i, i});   // W -> N
  return ring;
}

}  // namespace

Field gen_rough_disc(int radius, std::int64_t size, std::uint64_t seed) {
  if (radius < 1) throw FieldError("invalid rough disc size");
  const auto lo = rough_disc_min_size(radius);
  const auto hi = rough_disc_max_size(radius);
  if (size < lo || size >= hi) throw FieldError("invalid rough disc size");

  Field f;
  for (std::int64_t y = -radius; y <= radius; ++y) {
    const auto w = radius - (y < 0 ? -y : y);
    for (std::int64_t x = -w; x <= w; ++x) f.insert({x, y});
  }
  const auto ring = ring_clockwise(radius + 1);
  const auto start = static_cast<std::size_t>(seed % ring.size());
  for (std::int64_t k = 0; k < size - lo; ++k) {
    f.insert(ring[(start + static_cast<std::size_t>(k)) % ring.size()]);
  }
  return f;
}

Field gen_random_connected(std::int64_t size, std::uint64_t seed) {
  if (size < 1) throw FieldError("random field size must be >= 1");
  std::mt19937_64 rng(seed);
  Field f;
  std::vector<Cell> frontier;
  std::unordered_set<Cell, CellHash> in_frontier;

  auto add = [&](Cell c) {
    f.insert(c);
    for (Cell nb : neighbours(c)) {
      if (!f.contains(nb) && in_frontier.insert(nb).second) frontier.push_back(nb);
    }
  };
  add({0, 0});
  while (static_cast<std::int64_t>(f.size()) < size) {
    std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
    const auto i = pick(rng);
    const Cell c = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    in_frontier.erase(c);
    add(c);
  }
  return f;
}

Field parse_field(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::optional<Cell> origin;
  Field f;
  std::int64_t row = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!origin) {
      std::istringstream hdr(line);
      std::string word;
      std::int64_t x = 0, y = 0;
      if (!(hdr >> word >> x >> y) || word != "origin") {
        throw ParseError(lineno, "expected header 'origin <x> <y>'");
      }
      std::string rest;
      if (hdr >> rest) throw ParseError(lineno, "trailing text after origin header");
      origin = Cell{x, y};
      continue;
    }
    for (std::size_t col = 0; col < line.size(); ++col) {
      const char ch = line[col];
      if (ch == '#') {
        f.insert({origin->x + static_cast<std::int64_t>(col), origin->y - row});
      } else if (ch != '.') {
        throw ParseError(lineno, std::string("illegal character '") + ch + "'");
      }
    }
    ++row;
  }
  if (!origin) throw ParseError(lineno == 0 ? 1 : lineno, "missing origin header");
  return f;
}

std::string render_field(const Field& f) {
  const auto box = bounding_box(f);
  if (!box) return "origin 0 0\n";
  std::string out = "origin " + std::to_string(box->min_x) + " " + std::to_string(box->max_y) + "\n";
  for (auto y = box->max_y; y >= box->min_y; --y) {
    std::string row;
    for (auto x = box->min_x; x <= box->max_x; ++x) row.push_back(f.contains({x, y}) ? '#' : '.');
    while (!row.empty() && row.back() == '.') row.pop_back();
    out += row;
    out += '\n';
  }
  return out;
}

Field parse_field_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, e.what());
  }
  if (!j.is_object() || !j.contains("cells") || !j["cells"].is_array()) {
    throw ParseError(1, "expected object with a \"cells\" array");
  }
  Field f;
  for (const auto& c : j["cells"]) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
      throw ParseError(1, "cell must be [x, y] integers");
    }
    f.insert({c[0].get<std::int64_t>(), c[1].get<std::int64_t>()});
  }
  return f;
}

std::string render_field_json(const Field& f) {
  nlohmann::json cells = nlohmann::json::array();
  for (Cell c : f.sorted_cells()) cells.push_back({c.x, c.y});
  return nlohmann::json{{"cells", cells}}.dump();
}

Field load_field(std::string_view text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos != std::string_view::npos && text[pos] == '{') return parse_field_json(text);
  return parse_field(text);
}

}  // namespace fortsim

// fortsim: build forts, benchmark scaling, replay traces, generate fields.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fortsim/build.hpp"
#include "fortsim/field.hpp"
#include "fortsim/verification.hpp"

namespace {

using namespace fortsim;

enum Exit : int { kOk = 0, kVerifyFail = 1, kInputError = 2, kContract = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FieldError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Cell parse_cell(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw FieldError("expected x,y but got '" + text + "'");
  try {
    return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw FieldError("expected x,y but got '" + text + "'");
  }
}

struct Source {
  std::string input;
  std::string gen;
  int radius = 3;
  std::int64_t size = 0;
  std::uint64_t seed = 0;
};

void add_source_options(CLI::App* cmd, Source& src) {
  cmd->add_option("--input", src.input, "field file (text grid or JSON)");
  cmd->add_option("--gen", src.gen, "generator")->check(CLI::IsMember({"rough-disc", "random"}));
  cmd->add_option("--radius", src.radius, "rough disc radius");
  cmd->add_option("--size", src.size, "number of bricks (rough disc default: smallest)");
  cmd->add_option("--seed", src.seed, "generator seed");
}

Field make_field(const Source& src) {
  if (!src.input.empty()) return load_field(read_file(src.input));
  if (src.gen == "rough-disc") {
    return gen_rough_disc(src.radius, src.size > 0 ? src.size : rough_disc_min_size(src.radius), src.seed);
  }
  if (src.gen == "random") return gen_random_connected(src.size, src.seed);
  throw FieldError("give --input or --gen");
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw FieldError("cannot write " + path);
  out << text;
}

int cmd_build(const Source& src, const std::string& start_text, const std::string& trace_path, std::int64_t frames,
              const std::string& frames_path, const std::string& check, const std::string& out_path) {
  const Field field = make_field(src);
  Cell start{0, 0};
  if (!start_text.empty()) {
    start = parse_cell(start_text);
  } else if (!src.input.empty() && !field.empty()) {
    start = field.sorted_cells().front();
  }

  BuildOptions opts;
  opts.check = *parse_check_level(check);

  std::ofstream trace_out;
  if (!trace_path.empty()) {
    trace_out.open(trace_path);
    if (!trace_out) throw FieldError("cannot write " + trace_path);
  }
  std::ofstream frames_file;
  std::ostream* frames_out = &std::cerr;
  if (frames > 0 && !frames_path.empty()) {
    frames_file.open(frames_path);
    if (!frames_file) throw FieldError("cannot write " + frames_path);
    frames_out = &frames_file;
  }
  std::optional<Box> touched = bounding_box(field);
  if (touched) {
    touched->min_x = std::min(touched->min_x, start.x);
    touched->max_x = std::max(touched->max_x, start.x);
    touched->min_y = std::min(touched->min_y, start.y);
    touched->max_y = std::max(touched->max_y, start.y);
  }
  if (!trace_path.empty() || frames > 0) {
    opts.listener = [&](const TraceEvent& e, const World& w, const ControllerState& s) {
      if (trace_out.is_open()) trace_out << to_jsonl(e) << '\n';
      if (frames <= 0 || !touched) return;
      for (Cell c : {e.position, e.target}) {
        touched->min_x = std::min(touched->min_x, c.x);
        touched->max_x = std::max(touched->max_x, c.x);
        touched->min_y = std::min(touched->min_y, c.y);
        touched->max_y = std::max(touched->max_y, c.y);
      }
      if (e.clock % frames != 0 || (e.action != Action::Move && e.action != Action::Pick && e.action != Action::Drop)) {
        return;
      }
      const Box box{touched->min_x - 2, touched->max_x + 2, touched->min_y - 2, touched->max_y + 2};
      *frames_out << "clock " << e.clock << ' ' << to_string(e.tag) << '\n'
                  << render_frame(w.field(), w.position(), s.anchors, box) << '\n';
    };
  }

  const auto result = build_fort(field, start, opts);
  if (!out_path.empty()) write_output(out_path, render_field(result.final_field));
  std::cout << summary_json(result) << '\n';
  for (const auto& v : result.violations) std::cerr << to_json(v) << '\n';
  return result.violations.empty() ? kOk : kVerifyFail;
}

int cmd_bench(int r_min, int r_max, bool all_sizes, std::uint64_t seed, unsigned threads, const std::string& out) {
  if (r_min < 3 || r_max < r_min) throw FieldError("bench needs 3 <= rmin <= rmax");
  const auto rows = run_bench(r_min, r_max, all_sizes, seed, threads);
  std::ostringstream csv;
  write_bench_csv(csv, rows);
  write_output(out, csv.str());
  std::ostream& note = (out.empty() || out == "-") ? std::cerr : std::cout;
  if (const auto slope = loglog_slope(rows)) {
    note << "slope " << *slope << '\n';
  } else {
    note << "slope undefined (fewer than two sizes)\n";
  }
  return kOk;
}

int cmd_verify(const std::string& trace_path, const std::string& field_path, const std::string& start_text) {
  const Field initial = load_field(read_file(field_path));
  std::ifstream in(trace_path);
  if (!in) throw FieldError("cannot read " + trace_path);
  std::vector<TraceEvent> trace;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      trace.push_back(trace_event_from_jsonl(line));
    } catch (const std::exception& e) {
      std::cout << nlohmann::json{{"ok", false}, {"index", n}, {"detail", std::string("unparsable event: ") + e.what()}}
                << '\n';
      return kVerifyFail;
    }
    ++n;
  }
  std::optional<Cell> start;
  if (!start_text.empty()) start = parse_cell(start_text);
  const auto r = replay_validate(trace, initial, start);
  std::cout << nlohmann::json{{"ok", r.ok}, {"index", r.index}, {"detail", r.detail}, {"events", trace.size()}} << '\n';
  return r.ok ? kOk : kVerifyFail;
}

int cmd_gen(const Source& src, const std::string& format, const std::string& out) {
  const Field f = make_field(src);
  write_output(out, format == "json" ? render_field_json(f) + "\n" : render_field(f));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fortsim: a single robot gathers a brick field into a fort"};
  app.require_subcommand(1);

  Source build_src;
  std::string start, trace_path, frames_path, check = "off", out;
  std::int64_t frames = 0;
  auto* build = app.add_subcommand("build", "run the construction on one field");
  add_source_options(build, build_src);
  build->add_option("--start", start, "start cell x,y (default: origin, or first cell of an input file)");
  build->add_option("--trace", trace_path, "write the JSONL trace here");
  build->add_option("--frames", frames, "dump an ASCII frame every N clock ticks");
  build->add_option("--frames-out", frames_path, "frame file (default: stderr)");
  build->add_option("--check", check, "inline invariant checks")->check(CLI::IsMember({"off", "boundaries", "full"}));
  build->add_option("--out", out, "write the final field here");

  int r_min = 3, r_max = 10;
  bool all_sizes = false;
  std::uint64_t bench_seed = 0;
  unsigned threads = 0;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "measure total clock on rough discs");
  bench->add_option("--rmin", r_min, "smallest radius (>= 3)");
  bench->add_option("--rmax", r_max, "largest radius");
  bench->add_flag("--all-sizes", all_sizes, "every size in [z1, z2) instead of z1 only");
  bench->add_option("--seed", bench_seed, "appendage placement seed");
  bench->add_option("--threads", threads, "worker threads (default: hardware)");
  bench->add_option("--out", bench_out, "CSV path (default: stdout)");

  std::string verify_trace, verify_field, verify_start;
  auto* verify = app.add_subcommand("verify", "replay a trace against its initial field");
  verify->add_option("--trace", verify_trace, "JSONL trace")->required();
  verify->add_option("--field", verify_field, "initial field")->required();
  verify->add_option("--start", verify_start, "start cell x,y (default: inferred)");

  Source gen_src;
  std::string format = "text", gen_out;
  auto* gen = app.add_subcommand("gen", "write a generated field");
  add_source_options(gen, gen_src);
  gen->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
  gen->add_option("--out", gen_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*build) return cmd_build(build_src, start, trace_path, frames, frames_path, check, out);
    if (*bench) return cmd_bench(r_min, r_max, all_sizes, bench_seed, threads, bench_out);
    if (*verify) return cmd_verify(verify_trace, verify_field, verify_start);
    if (*gen) return cmd_gen(gen_src, format, gen_out);
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return kContract;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const FieldError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}

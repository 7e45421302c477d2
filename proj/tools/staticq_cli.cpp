// Copyright 2026 The staticq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// staticq_cli: schedule generation, universality checks, embedding, transcript
// checks and PRF game simulation. One JSON document per invocation.
//
// Exit codes: 0 ok, 1 negative result, 2 usage or guard error.

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "staticq/staticq.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

std::vector<std::uint64_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    const std::string item = text.substr(start, end - start);
    std::uint64_t v = 0;
    const auto* first = item.data();
    const auto* last = item.data() + item.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (item.empty() || ec != std::errc() || ptr != last) {
      throw staticq::InvalidArgument(std::string("--") + what + ": '" + item +
                                     "' is not a non-negative integer");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw staticq::InvalidArgument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const nlohmann::json& doc, const std::string& out_path = {}) {
  if (out_path.empty()) {
    std::cout << doc.dump() << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw staticq::InvalidArgument("cannot write " + out_path);
  out << doc.dump() << '\n';
}

int schedule_gen(const std::string& q_text, const std::string& out_path) {
  const staticq::Characteristic q(parse_list(q_text, "q"));
  emit(staticq::schedule_to_json(staticq::build_universal_schedule(q)), out_path);
  return kOk;
}

int schedule_verify(const std::string& q_text, const std::string& schedule_path,
                    std::uint64_t max_total, std::size_t max_alphabet) {
  const staticq::Characteristic q(parse_list(q_text, "q"));
  const staticq::verify::Guard guard{max_total, max_alphabet};
  staticq::verify::check_guard(q, guard);
  std::vector<staticq::Symbol> target;
  if (schedule_path.empty()) {
    const auto s = staticq::build_universal_schedule(q);
    target.assign(s.symbols().begin(), s.symbols().end());
  } else {
    const auto s = staticq::schedule_from_string(read_file(schedule_path));
    if (s.alphabet_size() != q.alphabet_size()) {
      throw staticq::InvalidArgument("schedule alphabet does not match --q");
    }
    target.assign(s.symbols().begin(), s.symbols().end());
  }
  const auto r = staticq::verify::check_universal_against(target, q, guard);
  nlohmann::json doc{{"q", std::vector<std::uint64_t>(q.counts().begin(), q.counts().end())},
                     {"strings_checked", r.strings_checked}};
  if (r.ok()) {
    doc["result"] = "ok";
    emit(doc);
    return kOk;
  }
  doc["result"] = "counterexample";
  doc["counterexample"] = *r.counterexample;
  emit(doc);
  return kNegative;
}

int embed(const std::string& schedule_path, const std::string& queries_text) {
  const auto s = staticq::schedule_from_string(read_file(schedule_path));
  std::vector<staticq::Symbol> queries;
  if (!queries_text.empty()) {
    for (auto v : parse_list(queries_text, "queries")) {
      if (v == 0 || v > s.alphabet_size()) {
        throw staticq::InvalidArgument("query symbol " + std::to_string(v) + " outside 1.." +
                                       std::to_string(s.alphabet_size()));
      }
      queries.push_back(static_cast<staticq::Symbol>(v));
    }
  }
  staticq::EmbeddingState state(s);
  std::vector<std::size_t> indices;
  for (auto sym : queries) {
    const auto j = state.next_index(sym);
    if (!j) {
      emit(nlohmann::json{{"result", "not_subsequence"},
                          {"embedded_prefix", indices},
                          {"failed_at", indices.size() + 1}});
      return kNegative;
    }
    indices.push_back(*j);
  }
  emit(nlohmann::json{{"result", "ok"}, {"indices", indices}});
  return kOk;
}

int verify_transcript(const std::string& schedule_path, const std::string& transcript_path) {
  const auto s = staticq::schedule_from_string(read_file(schedule_path));
  const auto t = staticq::QueryTranscript::from_jsonl(read_file(transcript_path));
  const auto c = staticq::check_transcript(t, s);
  nlohmann::json doc{{"ok", c.ok},
                     {"records", t.size()},
                     {"real_per_oracle", c.real_per_oracle},
                     {"slots_per_oracle", c.slots_per_oracle}};
  if (!c.ok) doc["error"] = c.error;
  emit(doc);
  return c.ok ? kOk : kNegative;
}

struct SimulateOptions {
  unsigned key_bits = 4;
  std::uint64_t q_h = 4;
  std::uint64_t q_o = 2;
  std::string adversary = "key-guess";
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::string h = "pair";
  std::size_t x_bytes = 4;
  std::size_t y_bytes = 1;
  std::string hosting = "static";
  bool null_game = false;
};

int simulate_prf(const SimulateOptions& o) {
  namespace g = staticq::games;
  g::GameParams p;
  if (o.h == "pair") {
    p.h = g::pair_h(o.key_bits);
  } else if (o.h == "skprf-xor") {
    p.h = g::skprf_h(staticq::skprf::GVariant::kXorSum, o.key_bits);
  } else if (o.h == "skprf-concat") {
    p.h = g::skprf_h(staticq::skprf::GVariant::kConcat, o.key_bits);
  } else {
    throw staticq::InvalidArgument("unknown --hfunc '" + o.h + "'");
  }
  p.q_h = o.q_h;
  p.q_o = o.q_o;
  p.x_bytes = o.x_bytes;
  p.y_bytes = o.y_bytes;
  p.seed = o.seed;
  p.hosting = o.hosting == "direct" ? g::Hosting::kDirect : g::Hosting::kStatic;
  p.ideal_both = o.null_game;
  const auto adversary = g::make_adversary(o.adversary);
  try {
    const auto e = g::estimate_advantage(p, *adversary, o.trials);
    emit(g::report(p, *adversary, e));
    return kOk;
  } catch (const staticq::FreshnessViolation& e) {
    emit(nlohmann::json{{"error", "freshness_violation"}, {"message", e.what()}});
    return kNegative;
  } catch (const staticq::BudgetExceeded& e) {
    emit(nlohmann::json{{"error", "budget_exceeded"},
                        {"oracle", e.oracle()},
                        {"attempted", e.attempted()},
                        {"budget", e.budget()},
                        {"message", e.what()}});
    return kNegative;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"staticq: static query schedules and split-key PRF games"};
  app.require_subcommand(1);

  std::string q_text;
  std::string out_path;
  auto* gen = app.add_subcommand("schedule-gen", "Write the universal schedule for budget q");
  gen->add_option("--q", q_text, "Comma-separated per-oracle budgets")->required();
  gen->add_option("--out", out_path, "Output file (default stdout)");

  std::string verify_q;
  std::string verify_schedule;
  std::uint64_t max_total = 8;
  std::size_t max_alphabet = 4;
  auto* ver = app.add_subcommand("schedule-verify", "Exhaustively check universality for q");
  ver->add_option("--q", verify_q, "Comma-separated per-oracle budgets")->required();
  ver->add_option("--schedule", verify_schedule, "Check this schedule file instead of the built one");
  ver->add_option("--max-Q", max_total, "Guard on total budget")->capture_default_str();
  ver->add_option("--max-n", max_alphabet, "Guard on alphabet size")->capture_default_str();

  std::string embed_schedule;
  std::string embed_queries;
  auto* emb = app.add_subcommand("embed", "Greedy-embed a query string into a schedule");
  emb->add_option("--schedule", embed_schedule, "Schedule JSON file")->required();
  emb->add_option("--queries", embed_queries, "Comma-separated oracle ids")->required();

  std::string vt_schedule;
  std::string vt_transcript;
  auto* vt = app.add_subcommand("verify-transcript", "Check a JSON-lines slot transcript");
  vt->add_option("--schedule", vt_schedule, "Schedule JSON file")->required();
  vt->add_option("--transcript", vt_transcript, "Transcript JSON-lines file")->required();

  SimulateOptions sim;
  auto* simc = app.add_subcommand("simulate-prf", "Estimate PRF distinguishing advantage");
  simc->add_option("--keybits", sim.key_bits, "Key bits (|K| = 2^keybits)")->capture_default_str();
  simc->add_option("--qH", sim.q_h, "H-query budget")->capture_default_str();
  simc->add_option("--qO", sim.q_o, "O-query budget")->capture_default_str();
  simc->add_option("--adversary", sim.adversary, "Adversary name")
      ->capture_default_str()
      ->check(CLI::IsMember(staticq::games::adversary_names()));
  simc->add_option("--trials", sim.trials, "Monte-Carlo trials (>= 100)")->capture_default_str();
  simc->add_option("--seed", sim.seed, "Root seed")->capture_default_str();
  simc->add_option("--hfunc", sim.h, "pair | skprf-xor | skprf-concat")->capture_default_str();
  simc->add_option("--xbytes", sim.x_bytes, "PRF input length")->capture_default_str();
  simc->add_option("--ybytes", sim.y_bytes, "Random-oracle output length")->capture_default_str();
  simc->add_option("--hosting", sim.hosting, "static | direct")
      ->capture_default_str()
      ->check(CLI::IsMember({"static", "direct"}));
  simc->add_flag("--null", sim.null_game, "Serve the random function in both games");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) return schedule_gen(q_text, out_path);
    if (*ver) return schedule_verify(verify_q, verify_schedule, max_total, max_alphabet);
    if (*emb) return embed(embed_schedule, embed_queries);
    if (*vt) return verify_transcript(vt_schedule, vt_transcript);
    if (*simc) return simulate_prf(sim);
  } catch (const staticq::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

// Command-line front end: run scenarios, solve synchronizing/driving words,
// and export virtual state spaces. All I/O goes through files and standard
// streams; exit codes are 0 (success, including negative decisions),
// 1 (domain or I/O error), 2 (usage error).

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vrr/vrr.hpp"

namespace {

int cmd_run(const std::string& scenario_path, std::optional<std::uint64_t> seed,
            const std::string& trace_path, const std::string& map_path,
            const std::string& ascii_path) {
  vrr::json doc = vrr::load_json_file(scenario_path);
  const std::string base_dir = std::filesystem::path(scenario_path).parent_path().string();
  vrr::Scenario sc = vrr::scenario_from_json(doc, base_dir);
  if (seed) sc.seed = *seed;

  const vrr::Trace trace = vrr::run_scenario(sc);
  if (!trace_path.empty()) vrr::write_text_file(trace_path, vrr::trace_to_jsonl(trace));
  if (!map_path.empty()) vrr::write_text_file(map_path, vrr::map_to_pgm(trace.map));
  if (!ascii_path.empty()) vrr::write_text_file(ascii_path, vrr::map_to_ascii(trace.map));

  vrr::Rect region = sc.region.value_or(
      vrr::Rect{0, 0, sc.world.width() - 1, sc.world.height() - 1});
  std::cout << vrr::to_json(vrr::confinement_metrics(trace, region)).dump() << "\n";
  return 0;
}

int cmd_sync(const std::string& dfa_path, const std::string& target,
             const std::string& start, bool unknown_start, bool use_oracle) {
  const vrr::InformationAutomaton a = vrr::automaton_from_json(vrr::load_json_file(dfa_path));

  vrr::ObservationWord word;
  try {
    if (unknown_start) {
      if (use_oracle || target.empty()) {
        word = use_oracle ? vrr::shortest_sync_word_oracle(a) : vrr::greedy_sync_word(a);
        if (!target.empty()) {
          const int s0 = vrr::run(a, 0, word);
          const auto tail = vrr::drive_to(a, a.istate_index(target), s0);
          word.insert(word.end(), tail.begin(), tail.end());
        }
      } else {
        word = vrr::drive_to(a, a.istate_index(target), vrr::UnknownStart{});
      }
    } else {
      word = vrr::drive_to(a, a.istate_index(target), a.istate_index(start));
    }
  } catch (const vrr::NotSynchronizable&) {
    std::cout << "NOT-SYNCHRONIZABLE\n";
    return 0;
  } catch (const vrr::NoSequence&) {
    std::cout << "NO-SEQUENCE\n";
    return 0;
  }

  for (size_t i = 0; i < word.size(); ++i)
    std::cout << (i ? " " : "") << word[i];
  std::cout << "\n";
  return 0;
}

int cmd_partition(const std::string& world_path, const std::vector<std::string>& sensor_ids,
                  const std::string& out_path) {
  const vrr::WorldModel world = vrr::world_from_json(vrr::load_json_file(world_path));
  const auto sensors = vrr::make_sensors(sensor_ids);
  const vrr::VirtualSpace vs = vrr::build_virtual_space(sensors, world);
  if (!out_path.empty()) vrr::write_text_file(out_path, vrr::to_json(vs).dump(2) + "\n");

  vrr::json summary = {{"num_states", vs.num_states},
                       {"num_cells", vs.cell_count()},
                       {"nondeterministic_pairs", vs.nondeterministic_pair_count()}};
  std::cout << summary.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"virtual-reality-for-robots laboratory"};
  app.require_subcommand(1);

  // run
  std::string scenario_path, trace_path, map_path, ascii_path;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "execute a scenario file");
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--out", trace_path, "write the trace as JSON Lines");
  run->add_option("--map", map_path, "write the robot map as PGM (P2)");
  run->add_option("--ascii", ascii_path, "write the robot map as ASCII art");

  // sync
  std::string dfa_path, target, start;
  bool unknown_start = false, use_oracle = false;
  auto* sync = app.add_subcommand("sync", "observation words that drive a DFA");
  sync->add_option("dfa", dfa_path, "DFA JSON file")->required();
  sync->add_option("--target", target, "target I-state");
  auto* start_opt = sync->add_option("--start", start, "known start I-state");
  auto* unknown_opt =
      sync->add_flag("--unknown-start", unknown_start, "synchronize over all start I-states");
  start_opt->excludes(unknown_opt);
  sync->add_flag("--oracle", use_oracle, "use the exhaustive subset-BFS solver (n <= 12)");

  // partition
  std::string world_path, vs_out;
  std::vector<std::string> sensor_ids;
  auto* part = app.add_subcommand("partition", "virtual state space of a sensor suite");
  part->add_option("world", world_path, "world JSON file")->required();
  part->add_option("--sensors", sensor_ids, "sensor ids, e.g. bump proximity:1 range:4")
      ->required()
      ->delimiter(',');
  part->add_option("--out", vs_out, "write the virtual space as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(scenario_path, seed, trace_path, map_path, ascii_path);
    if (sync->parsed()) {
      if (!unknown_start && start.empty()) {
        std::cerr << "sync needs --start or --unknown-start\n";
        return 2;
      }
      if (!unknown_start && target.empty()) {
        std::cerr << "sync with --start needs --target\n";
        return 2;
      }
      return cmd_sync(dfa_path, target, start, unknown_start, use_oracle);
    }
    if (part->parsed()) return cmd_partition(world_path, sensor_ids, vs_out);
  } catch (const vrr::json::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 2;
}

#include <iostream>

#include "CLI11.hpp"
#include "morseq/cli.hpp"

namespace {

std::vector<std::int64_t> split_ints(const std::string& s) {
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto item = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t used = 0;
    out.push_back(std::stoll(item, &used));
    if (used != item.size()) throw CLI::ValidationError("'" + s + "' is not a comma-separated integer list");
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Lists {
  std::string chamber, weight, lambda, charts, type;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"morseq: equivariant holomorphic Morse theory, exactly"};
  app.require_subcommand(1);
  morseq::CommandConfig cfg;
  Lists lists;
  std::string box;

  app.add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_flag("-v,--verbose", cfg.verbosity, "Diagnostics on stderr");

  auto with_box = [&](CLI::App* c) {
    c->add_option("--box", box, "Truncation box LO:HI, per-axis lists allowed (e.g. -5,-5:5,5)");
    c->add_option("--margin", cfg.margin, "Margin for the default box")->capture_default_str();
  };
  auto chamber = [&](CLI::App* c, bool required) {
    auto* o = c->add_option("--chamber", lists.chamber, "Chamber vector, e.g. 1,2");
    if (required) o->required();
  };
  auto fan_opts = [&](CLI::App* c) {
    c->add_option("--fan", cfg.fan, "Fan JSON")->required();
    c->add_option("--divisor", cfg.divisor, "Divisor JSON (default: trivial)");
  };

  auto* toric = app.add_subcommand("toric", "Toric backend")->require_subcommand(1);
  {
    auto* c = toric->add_subcommand("dataset", "Fixed-point dataset of a fan");
    fan_opts(c);
    chamber(c, false);
    c = toric->add_subcommand("flow", "Flow digraph for a chamber");
    fan_opts(c);
    chamber(c, true);
    c = toric->add_subcommand("sections", "Section region of a chart intersection");
    fan_opts(c);
    c->add_option("--charts", lists.charts, "Chart indices, e.g. 0,1")->required();
    with_box(c);
    c = toric->add_subcommand("oracle", "Lattice points of the divisor polytope");
    fan_opts(c);
    with_box(c);
  }

  auto* cech = app.add_subcommand("cech", "Cech engine")->require_subcommand(1);
  {
    auto* c = cech->add_subcommand("pages", "Spectral sequence pages at one weight");
    fan_opts(c);
    chamber(c, true);
    c->add_option("--weight", lists.weight, "Weight xi, e.g. 2,0")->required();
    c->add_option("--rmax", cfg.r_max, "Last page (default m+1)");
    c = cech->add_subcommand("cohomology", "Cohomology characters over a box");
    fan_opts(c);
    with_box(c);
  }

  auto* fp = app.add_subcommand("fp", "Fixed-point formulas")->require_subcommand(1);
  for (const char* verb : {"index", "index-cs", "morse", "e1", "verify"}) {
    auto* c = fp->add_subcommand(verb, std::string("fp ") + verb);
    c->add_option("--dataset", cfg.dataset, "Dataset JSON")->required();
    chamber(c, true);
    with_box(c);
    if (std::string(verb) != "index" && std::string(verb) != "index-cs") {
      c->add_option("--variant", cfg.variant, "cs or ordinary")->check(CLI::IsMember({"cs", "ordinary"}));
    }
    if (std::string(verb) == "verify") c->add_option("--candidate", cfg.candidate, "Cohomology JSON")->required();
  }

  auto* poset = app.add_subcommand("poset", "Flow poset")->require_subcommand(1);
  for (const char* verb : {"check", "filtration"}) {
    auto* c = poset->add_subcommand(verb, std::string("poset ") + verb);
    c->add_option("--edges", cfg.edges, "Digraph JSON {vertices, edges}");
    c->add_option("--dataset", cfg.dataset, "Dataset JSON with edges");
  }

  auto* flag = app.add_subcommand("flag", "Flag manifolds")->require_subcommand(1);
  for (const char* verb : {"dataset", "euler", "bgg", "bott"}) {
    auto* c = flag->add_subcommand(verb, std::string("flag ") + verb);
    c->add_option("--type", lists.type, "Cartan type A, B or G")->required();
    c->add_option("--rank", cfg.root_rank, "Rank")->required();
    c->add_option("--lambda", lists.lambda, "Weight in fundamental coordinates, e.g. 1,1")->allow_extra_args(false);
  }

  try {
    app.parse(argc, argv);
    for (auto* group : app.get_subcommands()) {
      cfg.group = group->get_name();
      for (auto* verb : group->get_subcommands()) cfg.verb = verb->get_name();
    }
    if (!lists.chamber.empty()) cfg.chamber = split_ints(lists.chamber);
    if (!lists.weight.empty()) cfg.weight = split_ints(lists.weight);
    if (!lists.lambda.empty()) cfg.lambda = split_ints(lists.lambda);
    if (!lists.charts.empty()) {
      std::vector<std::size_t> charts;
      for (auto x : split_ints(lists.charts)) {
        if (x < 0) throw CLI::ValidationError("--charts: indices must be nonnegative");
        charts.push_back(static_cast<std::size_t>(x));
      }
      cfg.charts = charts;
    }
    if (!lists.type.empty()) {
      if (lists.type.size() != 1) throw CLI::ValidationError("--type: expected one letter");
      cfg.root_type = lists.type[0];
    }
    if (!box.empty()) cfg.box = box;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return morseq::run(cfg, std::cout, std::cerr);
}

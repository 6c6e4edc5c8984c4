#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "commands.hpp"

namespace {

const char* kUsage =
    "usage: hypgrpd <command> [--option value ...]\n"
    "\n"
    "log-scales        logscale-delta logscale-metric paste\n"
    "hyperbolicity     delta thin-delta busemann criterion level-graph\n"
    "self-similar      act section nucleus schreier limit-space gamma-graph\n"
    "germ groupoids    cayley preimage-tree boundary-scale rotation-graph\n"
    "shift spaces      splice-check fried dual-sft duality-witness\n"
    "adic systems      vershik substitution tile-lengths itinerary\n"
    "\n"
    "common options:\n"
    "  --preset NAME     built-in system (doubling, dyadic-affine, golden-rotation,\n"
    "                    basilica-shift; adding-machine, basilica; full2, golden-mean,\n"
    "                    free-group; golden, fibonacci)\n"
    "  --in/--graph/--sft/--automaton/--adic FILE   JSON input\n"
    "  --radius/--horizon/--depth/--steps N         budgets\n"
    "  --seed N          sampler seed (recorded in the report)\n"
    "  --format dot      DOT output for graph-valued results\n"
    "  --out FILE        write the report to FILE instead of stdout\n"
    "\n"
    "exit codes: 0 ok, 1 property violation, 2 bad input, 3 budget exhausted\n";

}  // namespace

int main(int argc, char** argv) {
    using hypgrpd::cli::RunConfig;

    RunConfig cfg;
    std::string out_path;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if (a == "--help" || a == "-h") {
            std::fputs(kUsage, stdout);
            return 0;
        }
        if (a.rfind("--", 0) == 0) {
            std::string key = a.substr(2);
            std::string val;
            auto eq = key.find('=');
            if (eq != std::string::npos) {
                val = key.substr(eq + 1);
                key = key.substr(0, eq);
            } else if (i + 1 < argc && std::string(argv[i + 1]).rfind("--", 0) != 0) {
                val = argv[++i];
            }
            if (key.empty()) {
                std::fprintf(stderr, "bad option '%s'\n", a.c_str());
                return 2;
            }
            if (key == "out")
                out_path = val;
            else
                cfg.opt[key] = val;
        } else if (cfg.command.empty()) {
            cfg.command = a;
        } else {
            std::fprintf(stderr, "unexpected argument '%s'\n", a.c_str());
            return 2;
        }
    }
    if (cfg.command.empty()) {
        std::fputs(kUsage, stderr);
        return 2;
    }

    auto rr = hypgrpd::cli::run_command(cfg);
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            std::fprintf(stderr, "cannot write '%s'\n", out_path.c_str());
            return 2;
        }
        f << rr.text;
    } else {
        std::fputs(rr.text.c_str(), stdout);
    }
    return rr.code;
}

// Exercises the installed CLI binary end to end: exit codes, golden
// values, JSON report determinism, config-file handling. The binary path
// arrives as argv[1].

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        std::cerr << "[FAIL] " << what << "\n";
        ++g_failures;
    } else {
        std::cout << "[ok] " << what << "\n";
    }
}

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe))
        r.output.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-haar-binary>\n";
        return 2;
    }
    const std::string bin = argv[1];

    {
        const RunResult r = run(bin + " catalog");
        expect(r.exit_code == 0, "catalog exits 0");
        expect(r.output.find("velocity:<c>") != std::string::npos, "catalog lists velocity:<c>");
        expect(r.output.find("shear:<n>") != std::string::npos, "catalog lists shear:<n>");
        expect(r.output.find("normal:<mean>,<sd>") != std::string::npos,
               "catalog lists normal:<mean>,<sd>");
    }

    {
        const RunResult r =
            run(bin + " transport --builtin velocity:1 --samples 200 --sets 10");
        expect(r.exit_code == 0, "transport velocity:1 passes all checks (exit 0)");
        expect(r.output.find("pass") != std::string::npos, "transport prints verdicts");
    }

    {
        const RunResult r = run(bin + " transport --forward \"exp(x\" --inverse \"ln(x)\"");
        expect(r.exit_code == 2, "malformed expression exits 2");
    }

    {
        const RunResult r = run(bin +
                                " transport --forward \"x^2\" --inverse \"sqrt(x)\""
                                " --domain \"-2,2\" --codomain \"0,4\"");
        expect(r.exit_code == 3, "non-bijective pair exits 3");
    }

    {
        const RunResult r = run(bin + " integrate --measure velocity:1 --set \"[0,0.5)\"");
        expect(r.exit_code == 0, "integrate exits 0");
        const double mass = std::strtod(r.output.c_str(), nullptr);
        expect(std::abs(mass - 0.5493061443340549) <= 1e-6,
               "velocity mass of [0,0.5) is ln(3)/2 within 1e-6");
    }

    {
        const RunResult r = run(bin + " integrate --measure lebesgue --set \"[2,5)\"");
        const double mass = std::strtod(r.output.c_str(), nullptr);
        expect(std::abs(mass - 3.0) <= 1e-9, "lebesgue mass of [2,5) is 3");
    }

    {
        const RunResult r =
            run(bin + " integrate --density \"1/x\" --carrier halfline --set "
                      "\"[1,2.718281828459045)\"");
        const double mass = std::strtod(r.output.c_str(), nullptr);
        expect(std::abs(mass - 1.0) <= 1e-6, "1/x mass of [1,e) is 1 within 1e-6");
    }

    {
        const RunResult a = run(bin +
                                " haarize --dist normal:0,1 --samples 100 --sets 10"
                                " --seed 7 --json /tmp/haar_cli_a.jsonl");
        const RunResult b = run(bin +
                                " haarize --dist normal:0,1 --samples 100 --sets 10"
                                " --seed 7 --json /tmp/haar_cli_b.jsonl");
        expect(a.exit_code == 0 && b.exit_code == 0, "haarize normal passes (exit 0)");
        expect(slurp("/tmp/haar_cli_a.jsonl") == slurp("/tmp/haar_cli_b.jsonl"),
               "same config + seed gives byte-identical JSON reports");
        expect(slurp("/tmp/haar_cli_a.jsonl").find("haar-report/1") != std::string::npos,
               "JSON report carries the schema version");
    }

    {
        std::ofstream cfg("/tmp/haar_cli.cfg");
        cfg << "[integrate]\nmeasure=log\nset=\"[1,2.718281828459045)\"\n";
        cfg.close();
        const RunResult r = run(bin + " --config /tmp/haar_cli.cfg integrate");
        expect(r.exit_code == 0, "config file drives the integrate subcommand");
        const double mass = std::strtod(r.output.c_str(), nullptr);
        expect(std::abs(mass - 1.0) <= 1e-6, "config-driven log mass of [1,e) is 1");
    }

    {
        const RunResult r = run(bin + " haarize --sigma-finite lebesgue");
        expect(r.exit_code == 0, "sigma-finite haarize passes (exit 0)");
        expect(r.output.find("equivalence") != std::string::npos,
               "sigma-finite run reports the equivalence check");
    }

    {
        const RunResult r = run(bin +
                                " transport --builtin velocity:1 --checks axioms,invariance"
                                " --samples 100 --sets 5");
        expect(r.exit_code == 0, "comma-separated --checks is accepted");
        expect(r.output.find("axioms") != std::string::npos &&
                   r.output.find("measure-invariance") != std::string::npos,
               "both selected checks ran");
        expect(r.output.find("abelian") == std::string::npos, "unselected checks are skipped");
    }

    {
        const RunResult r = run(bin + " verify --builtin real-line --samples 100 --sets 5");
        expect(r.exit_code == 0, "verify accepts base-group names (real-line)");
        const RunResult c = run(bin + " verify --builtin circle --samples 100 --sets 5");
        expect(c.exit_code == 0, "verify accepts base-group names (circle)");
    }

    {
        const RunResult r = run(bin + " transport --builtin log --forward \"exp(x)\"");
        expect(r.exit_code == 2, "conflicting selectors exit 2");
    }

    {
        const RunResult r = run(bin +
                                " integrate --measure lebesgue --set \"[0,1)u[2,4)\""
                                " --json /tmp/haar_cli_mass.json");
        expect(r.exit_code == 0, "integrate writes a JSON machine form");
        const std::string j = slurp("/tmp/haar_cli_mass.json");
        expect(j.find("\"set\":[[0.0,1.0],[2.0,4.0]]") != std::string::npos,
               "the set appears as a list of pairs");
        expect(j.find("haar-mass/1") != std::string::npos, "mass schema is versioned");
    }

    {
        const RunResult r = run(bin + " verify --dist uniform --samples 100 --sets 10");
        expect(r.exit_code == 0, "verify --dist uniform exits 0");
    }

    {
        const RunResult r = run("HAAR_SEED=123 " + bin +
                                " transport --builtin log --samples 50 --sets 5"
                                " --json /tmp/haar_cli_env.jsonl");
        expect(r.exit_code == 0, "HAAR_SEED environment default is accepted");
    }

    if (g_failures) {
        std::cerr << g_failures << " CLI check(s) failed\n";
        return 1;
    }
    std::cout << "all CLI checks passed\n";
    return 0;
}

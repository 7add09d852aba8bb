// Drives the command-line binary end to end; the binary path is argv[1].

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

int run(const std::string& cmd, std::string* output = nullptr) {
  const std::string full = cmd + " > cli_out.txt 2> cli_err.txt";
  const int status = std::system(full.c_str());
  if (output) {
    std::ifstream in("cli_out.txt");
    std::stringstream ss;
    ss << in.rdbuf();
    *output = ss.str();
  }
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  out << text;
}

// Minimal GF01 writer: header + little-endian interleaved doubles.
void write_gf01_raw(const std::string& path, int size, double L,
                    bool truncate_tail) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << "GF01 n=2 shape=" << size << "," << size << " box=" << L << "," << L
      << "\n";
  const int total = size * size;
  std::vector<double> pair(2);
  for (int i = 0; i < total; ++i) {
    pair[0] = std::cos(0.1 * i);
    pair[1] = 0.0;
    const std::size_t bytes = (truncate_tail && i + 1 == total) ? 8 : 16;
    out.write(reinterpret_cast<const char*>(pair.data()),
              static_cast<std::streamsize>(bytes));
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <binary>\n";
    return 1;
  }
  const std::string bin = argv[1];
  std::string out;

  // Constant symbol: echoes the value at every xi.
  write_file("const.json",
             "{\"family\":\"constant\",\"n\":2,\"value\":[0.25,0.0]}");
  int rc = run(bin + " symbol-eval --symbol const.json --xi 1,2 --xi 0,1", &out);
  expect(rc == 0, "constant symbol-eval exit code (" + std::to_string(rc) + ")");
  expect(out.find("0.25") != std::string::npos, "constant value in output");
  {
    std::istringstream lines(out);
    std::string line;
    int count = 0;
    while (std::getline(lines, line))
      if (!line.empty()) ++count;
    expect(count == 2, "one output line per xi");
  }

  // Inline descriptor works the same way.
  rc = run(bin + " symbol-eval --symbol "
                 "'{\"family\":\"beurling\",\"n\":2}' --xi 1,0",
           &out);
  expect(rc == 0, "inline beurling exit code");
  expect(out.find("1,0,1,") != std::string::npos, "beurling at (1,0) prints 1");

  // Missing descriptor file -> parse error (2).
  rc = run(bin + " symbol-eval --symbol does_not_exist.json --xi 1,0");
  expect(rc == 2, "missing descriptor exits 2 (" + std::to_string(rc) + ")");

  // Unknown check name -> parse error (2).
  rc = run(bin + " check not-a-check");
  expect(rc == 2, "unknown check exits 2 (" + std::to_string(rc) + ")");

  // Lagrange identities pass.
  rc = run(bin + " check lagrange", &out);
  expect(rc == 0, "check lagrange exits 0 (" + std::to_string(rc) + ")");

  // Apply with the constant symbol preserves the field.
  write_gf01_raw("in.gf01", 16, 6.2831853, false);
  rc = run(bin + " apply --symbol const.json --in in.gf01 --out out.gf01");
  expect(rc == 0, "apply exit code (" + std::to_string(rc) + ")");
  {
    std::ifstream check("out.gf01", std::ios::binary);
    expect(check.good(), "apply wrote the output file");
    std::string header;
    std::getline(check, header);
    expect(header.rfind("GF01 n=2 shape=16,16", 0) == 0, "output header");
  }

  // Malformed input (truncated payload) -> exit 4.
  write_gf01_raw("bad.gf01", 16, 6.2831853, true);
  rc = run(bin + " apply --symbol const.json --in bad.gf01 --out out2.gf01");
  expect(rc == 4, "truncated field exits 4 (" + std::to_string(rc) + ")");

  // Bad magic -> exit 4.
  write_file("magic.gf01", "GFXX n=2 shape=16,16 box=1,1\n");
  rc = run(bin + " apply --symbol const.json --in magic.gf01 --out out3.gf01");
  expect(rc == 4, "bad magic exits 4 (" + std::to_string(rc) + ")");

  // Invalid descriptor JSON -> exit 2.
  write_file("broken.json", "{\"family\":\"nope\"}");
  rc = run(bin + " symbol-eval --symbol broken.json --xi 1,0");
  expect(rc == 2, "unknown family exits 2 (" + std::to_string(rc) + ")");

  if (failures == 0) std::cout << "cli: all checks passed\n";
  return failures == 0 ? 0 : 1;
}

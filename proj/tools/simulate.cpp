#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "crowdflow/cli.hpp"

int main(int argc, char** argv) {
  using namespace crowdflow;
  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const CliInvocation invocation = parse_cli(args);
    return execute(invocation, std::cout);
  } catch (const HelpRequested& help) {
    std::cout << help.what();
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "run 'simulate --help' for usage\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

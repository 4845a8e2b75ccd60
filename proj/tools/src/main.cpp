#include <iostream>

#include "nmmo_tools/campaign.hpp"

int main(int argc, char** argv) {
  using namespace nmmo::tools;
  CampaignSpec spec;
  try {
    spec = parse_args(argc, argv);
  } catch (const HelpRequested& h) {
    std::cout << h.what();
    return kSuccess;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for the list of options.\n";
    return kUsage;
  }
  return run_campaign(spec, std::cerr);
}

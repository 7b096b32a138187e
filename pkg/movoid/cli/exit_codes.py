EXIT_OK = 0
EXIT_USAGE = 1  # bad flags, bad configuration, malformed input files
EXIT_INVALID = 2  # the input was read but failed validation

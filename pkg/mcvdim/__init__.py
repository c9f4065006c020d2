# name of environment variable the harness reads for a default CIR cache directory
cache_env_var = "MCVDIM_CACHE_DIR"

from app import cli_run

if __name__ == "__main__":
    import sys
    sys.exit(cli_run(sys.argv[1:]))

import sys

from .cli import fr_main, nest_main

if __name__ == "__main__":
    if len(sys.argv) > 1 and sys.argv[1] == "nest":
        raise SystemExit(nest_main(sys.argv[2:]))
    raise SystemExit(fr_main(sys.argv[1:]))

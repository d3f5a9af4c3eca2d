from ggdkit.cli import main

raise SystemExit(main())

from kpzlab.main import main

main()
